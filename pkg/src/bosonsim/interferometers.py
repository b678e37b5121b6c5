"""Linear-optical unitaries: named transforms, circuits, Haar draws, loss.

Convention: column index = input mode, i.e. a photon entering mode j leaves
in mode k with amplitude U[k, j]. All constructors return matrices that pass
the unitarity invariant max|U^dag U - I| <= 1e-10.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "Interferometer",
    "CircuitElement",
    "rand_haar",
    "fourier",
    "hadamard",
    "beam_splitter",
    "phase_shift",
    "compose",
    "to_lossy",
    "interferometer_to_dict",
    "interferometer_from_dict",
    "interferometer_to_json",
    "interferometer_from_json",
]

UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class Interferometer:
    """An m-mode unitary with a provenance tag."""

    U: np.ndarray
    kind: str = "user"

    def __post_init__(self):
        u = np.array(self.U, dtype=np.complex128)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError(f"interferometer matrix must be square, got {u.shape}")
        if u.shape[0] < 1:
            raise ValueError("interferometer needs at least one mode")
        dev = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
        if dev > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary: max |U^dag U - I| = {dev:.3e}")
        u.flags.writeable = False
        object.__setattr__(self, "U", u)

    @property
    def m(self):
        return self.U.shape[0]


@dataclass(frozen=True)
class CircuitElement:
    """A beam splitter or phase shifter acting on named modes."""

    kind: str          # "beamsplitter" | "phaseshift"
    parameter: float
    modes: tuple


def rand_haar(m, seed=None):
    """Haar-distributed m x m unitary, deterministic for a given seed.

    Complex Ginibre draw, QR factorization, then each column's phase is
    fixed by dividing out the phase of the corresponding R diagonal entry;
    without that correction QR alone is not Haar.
    """
    if m < 1:
        raise ValueError("mode count must be >= 1")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m)))
    z /= math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return Interferometer(q, kind="haar")


def fourier(m):
    """Discrete Fourier transform: U[j, k] = exp(2*pi*i*j*k/m)/sqrt(m)."""
    if m < 1:
        raise ValueError("mode count must be >= 1")
    j = np.arange(m)
    u = np.exp(2j * np.pi * np.outer(j, j) / m) / math.sqrt(m)
    return Interferometer(u, kind="fourier")


def hadamard(m):
    """Normalized Walsh-Hadamard transform; m must be a power of two."""
    if m < 1 or (m & (m - 1)) != 0:
        raise ValueError(f"hadamard transform needs a power-of-two mode count, got {m}")
    u = scipy.linalg.hadamard(m).astype(np.complex128) / math.sqrt(m)
    return Interferometer(u, kind="hadamard")


def beam_splitter(t, modes=(0, 1)):
    """Two-mode coupler with transmission amplitude t, real convention.

    Local action [[t, r], [r, -t]] with r = sqrt(1 - t^2). The phase
    convention is real-symmetric; build explicit phase shifters around it
    for phase-exact circuits.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"transmission amplitude must be in [0, 1], got {t}")
    a, b = modes
    if a == b:
        raise ValueError("beam splitter must act on two distinct modes")
    return CircuitElement("beamsplitter", float(t), (int(a), int(b)))


def phase_shift(phi, mode=0):
    """Single-mode phase e^{i phi}; phi wrapped into [0, 2*pi)."""
    return CircuitElement("phaseshift", float(phi) % (2.0 * math.pi), (int(mode),))


def element_matrix(element):
    """Local unitary of a circuit element (2x2 or 1x1)."""
    if element.kind == "beamsplitter":
        t = element.parameter
        r = math.sqrt(1.0 - t * t)
        return np.array([[t, r], [r, -t]], dtype=np.complex128)
    if element.kind == "phaseshift":
        return np.array([[np.exp(1j * element.parameter)]], dtype=np.complex128)
    raise ValueError(f"unknown circuit element kind {element.kind!r}")


def compose(elements, m):
    """Multiply circuit elements into an m-mode unitary.

    List order is temporal order: the first element acts first, i.e. is the
    rightmost matrix factor.
    """
    u = np.eye(m, dtype=np.complex128)
    for el in elements:
        for q in el.modes:
            if not 0 <= q < m:
                raise ValueError(f"element mode {q} out of range for m = {m}")
        g = np.eye(m, dtype=np.complex128)
        idx = np.array(el.modes, dtype=np.intp)
        g[np.ix_(idx, idx)] = element_matrix(el)
        u = g @ u
    return Interferometer(u, kind="circuit")


def to_lossy(interf, eta):
    """Dilate uniform photon loss into a 2m-mode unitary.

    Returns [[sqrt(eta) U, sqrt(1-eta) I], [sqrt(1-eta) U, -sqrt(eta) I]];
    modes m..2m-1 are environment modes that are never measured. The
    physical-to-physical block is exactly sqrt(eta) * U.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmission probability must be in [0, 1], got {eta}")
    u = interf.U
    m = interf.m
    rt = math.sqrt(eta)
    rl = math.sqrt(1.0 - eta)
    big = np.zeros((2 * m, 2 * m), dtype=np.complex128)
    big[:m, :m] = rt * u
    big[:m, m:] = rl * np.eye(m)
    big[m:, :m] = rl * u
    big[m:, m:] = -rt * np.eye(m)
    return Interferometer(big, kind="lossy")


def interferometer_to_dict(interf):
    return {
        "m": interf.m,
        "re": interf.U.real.tolist(),
        "im": interf.U.imag.tolist(),
        "kind": interf.kind,
    }


def interferometer_from_dict(doc):
    u = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
    if u.shape != (doc["m"], doc["m"]):
        raise ValueError("interferometer document has inconsistent dimensions")
    return Interferometer(u, kind=doc.get("kind", "user"))


def interferometer_to_json(interf):
    """Lossless JSON round trip at double precision."""
    return json.dumps(interferometer_to_dict(interf))


def interferometer_from_json(text):
    return interferometer_from_dict(json.loads(text))
