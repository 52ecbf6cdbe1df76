"""Independent 3-D brute-force evaluation of the three-mode overlap.

Builds the integrand directly from the mode definitions (tilted
coordinate frames, plane-wave phases) and integrates on a dense
trapezoid grid.  Shares no code path with the closed form under test.
"""

import numpy as np


def overlap_brute_force(Wp, Ws, Wi, th_s, th_i, l, dky, dkz, nxy=161, nz=257):
    """Direct integral of exp(i dk.r) U_p U_s U_i over the crystal.

    The abstract (dky, dkz) mismatch is realized by explicit wave
    vectors: k_s is fixed, k_i chosen to produce dky, k_p to produce
    dkz.  Returns the real part (the imaginary part vanishes by the
    symmetry of the z-interval).
    """
    ks = 8.0e6
    ki = (ks * np.sin(th_s) - dky) / np.sin(th_i)
    kp = dkz + ks * np.cos(th_s) + ki * np.cos(th_i)

    sx = 1.0 / np.sqrt(1 / Wp**2 + 1 / Ws**2 + 1 / Wi**2)
    ymax = 6 * sx + (l / 2) * max(np.sin(th_s), np.sin(th_i)) * 1.5
    X = np.linspace(-6 * sx, 6 * sx, nxy)
    Y = np.linspace(-ymax, ymax, nxy)
    Z = np.linspace(-l / 2, l / 2, nz)
    dx, dy, dz = X[1] - X[0], Y[1] - Y[0], Z[1] - Z[0]
    XX, YY = np.meshgrid(X, Y, indexing="ij")

    acc = 0.0 + 0.0j
    wz = np.ones(nz)
    wz[0] = wz[-1] = 0.5
    for iz, z in enumerate(Z):
        # signal/idler frames tilt in opposite senses about x
        ys = np.cos(th_s) * YY + np.sin(th_s) * z
        zs = -np.sin(th_s) * YY + np.cos(th_s) * z
        yi = np.cos(th_i) * YY - np.sin(th_i) * z
        zi = np.sin(th_i) * YY + np.cos(th_i) * z
        envelope = np.exp(-(XX**2 + YY**2) / Wp**2
                          - (XX**2 + ys**2) / Ws**2
                          - (XX**2 + yi**2) / Wi**2)
        slab = envelope * np.exp(1j * (kp * z - ks * zs - ki * zi))
        slab[0, :] *= 0.5
        slab[-1, :] *= 0.5
        slab[:, 0] *= 0.5
        slab[:, -1] *= 0.5
        acc += wz[iz] * slab.sum()
    return float((acc * dx * dy * dz).real)


# three fixed non-collinear instances with D != 0 and dky != 0, so the
# cross term of the longitudinal mismatch is actually exercised
OVERLAP_INSTANCES = [
    dict(Wp=30e-6, Ws=25e-6, Wi=20e-6, th_s=np.deg2rad(2.0),
         th_i=np.deg2rad(3.5), l=0.5e-3, dky=3000.0, dkz=1500.0),
    dict(Wp=20e-6, Ws=35e-6, Wi=28e-6, th_s=np.deg2rad(4.0),
         th_i=np.deg2rad(1.2), l=0.8e-3, dky=-2500.0, dkz=4000.0),
    dict(Wp=40e-6, Ws=40e-6, Wi=40e-6, th_s=np.deg2rad(3.1),
         th_i=np.deg2rad(3.1), l=1.0e-3, dky=1200.0, dkz=-3000.0),
]
