"""Photonic states, distinguishability models, measurements, and event probabilities.

The probability path is: select the scattering submatrix of the unitary for
an (input, output) pattern pair, weight it by the Gram matrix of the input
photons' internal-state overlaps, and normalize by output-mode factorials.
"""

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .interferometers import (
    Interferometer,
    interferometer_from_dict,
    interferometer_to_dict,
)
from .permanents import gram_permanent, permanent_ryser, validate_gram

__all__ = [
    "GuardError",
    "NumericError",
    "ModeOccupation",
    "first_modes",
    "Bosonic",
    "Distinguishable",
    "OneParameterInterpolation",
    "UserGram",
    "gram_of",
    "Input",
    "FockDetection",
    "FockSample",
    "PartitionCountsAll",
    "DarkCountFockSample",
    "Event",
    "DistributionTable",
    "scattering_submatrix",
    "compute_probability_fock",
    "all_mode_occupations",
    "full_distribution",
    "tvd",
]

ENUMERATION_GUARD = 1_000_000


class GuardError(RuntimeError):
    """An enumeration exceeded the desk-scale guard."""


class NumericError(RuntimeError):
    """A computed quantity violated its numeric contract."""


@dataclass(frozen=True)
class ModeOccupation:
    """Photon counts per optical mode; used for inputs and outputs alike."""

    counts: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.counts)
        if any(x < 0 for x in c):
            raise ValueError("photon counts must be nonnegative")
        object.__setattr__(self, "counts", c)

    @property
    def m(self):
        return len(self.counts)

    @property
    def n(self):
        return sum(self.counts)

    def mode_list(self):
        """Mode index repeated once per photon: (1, 0, 2) -> [0, 2, 2]."""
        out = []
        for q, c in enumerate(self.counts):
            out.extend([q] * c)
        return out


def first_modes(n, m):
    """Single photons in the first n of m modes."""
    if n > m:
        raise ValueError(f"n exceeds m: cannot place {n} single photons in {m} modes")
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    return ModeOccupation((1,) * n + (0,) * (m - n))


# --- distinguishability models ------------------------------------------


@dataclass(frozen=True)
class Bosonic:
    """Fully indistinguishable photons (all-ones Gram)."""


@dataclass(frozen=True)
class Distinguishable:
    """Fully distinguishable photons (identity Gram)."""


@dataclass(frozen=True)
class OneParameterInterpolation:
    """Linear interpolation at the Gram level: S = (1-x) I + x J.

    x = 1 is the bosonic limit, x = 0 the distinguishable one. Defining the
    interpolation on the Gram matrix keeps the model physical (positive
    semidefinite) for every x in [0, 1]; the two-photon coincidence on a
    balanced coupler then reads (1 - x^2)/2.
    """

    x: float

    def __post_init__(self):
        if not 0.0 <= self.x <= 1.0:
            raise ValueError(f"interpolation parameter must be in [0, 1], got {self.x}")


@dataclass(frozen=True)
class UserGram:
    """Arbitrary Gram matrix of internal-state overlaps, validated on creation."""

    S: np.ndarray

    def __post_init__(self):
        s = validate_gram(self.S)
        s.flags.writeable = False
        object.__setattr__(self, "S", s)


def gram_of(model, n):
    """Gram matrix of the n input photons' internal-state overlaps."""
    if n < 1:
        raise ValueError("need at least one photon")
    if isinstance(model, Bosonic):
        return np.ones((n, n), dtype=np.complex128)
    if isinstance(model, Distinguishable):
        return np.eye(n, dtype=np.complex128)
    if isinstance(model, OneParameterInterpolation):
        x = model.x
        return (1.0 - x) * np.eye(n, dtype=np.complex128) + x * np.ones((n, n))
    if isinstance(model, UserGram):
        if model.S.shape[0] != n:
            raise ValueError(
                f"gram dimension {model.S.shape[0]} does not match photon count {n}")
        return model.S
    raise TypeError(f"unknown distinguishability model {model!r}")


def interpolation_x(model):
    """The interpolation parameter of a model, if it has one."""
    if isinstance(model, Bosonic):
        return 1.0
    if isinstance(model, Distinguishable):
        return 0.0
    if isinstance(model, OneParameterInterpolation):
        return model.x
    raise TypeError(
        "only bosonic, distinguishable and interpolation models have a "
        "single interpolation parameter")


# --- inputs, measurements, events ----------------------------------------


@dataclass(frozen=True)
class Input:
    """A mode occupation plus a distinguishability model.

    Restricted to single photons per mode (0/1 counts).
    """

    occupation: ModeOccupation
    model: object = field(default_factory=Bosonic)

    def __post_init__(self):
        if any(c > 1 for c in self.occupation.counts):
            raise ValueError("inputs are restricted to 0 or 1 photon per mode")
        if isinstance(self.model, UserGram) and self.model.S.shape[0] != self.occupation.n:
            raise ValueError("gram dimension does not match the photon count")

    @property
    def n(self):
        return self.occupation.n

    @property
    def m(self):
        return self.occupation.m


@dataclass(frozen=True)
class FockDetection:
    """Detect one specific output occupation."""

    out: ModeOccupation


@dataclass(frozen=True)
class FockSample:
    """Draw an output occupation at random."""


@dataclass(frozen=True)
class PartitionCountsAll:
    """All photon-count probabilities over a partition of the output modes."""

    partition: object


@dataclass(frozen=True)
class DarkCountFockSample:
    """FockSample through detectors that click spuriously with probability p."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("invalid probability")


@dataclass
class Event:
    """Container tying an input, a measurement and an interferometer together."""

    input: Input
    measurement: object
    interferometer: Interferometer
    result: object = None

    def __post_init__(self):
        if self.input.m != self.interferometer.m:
            raise ValueError(
                f"input has {self.input.m} modes but interferometer has "
                f"{self.interferometer.m}")


# --- distribution tables ---------------------------------------------------


@dataclass
class DistributionTable:
    """Enumerated outcomes with probabilities.

    Outcomes are ModeOccupations or plain count tuples. ``truncation_error``
    declares the per-entry absolute error allowed for truncated tables; exact
    and empirical tables leave it at zero.
    """

    outcomes: list
    probs: np.ndarray
    truncation_error: float = 0.0

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if len(self.outcomes) != p.shape[0]:
            raise ValueError("outcomes and probabilities differ in length")
        slack = self.truncation_error
        if p.min() < -(1e-12 + slack) or p.max() > 1.0 + 1e-12 + slack:
            raise NumericError(
                f"probabilities out of range: min {p.min():.3e}, max {p.max():.3e}")
        p = np.clip(p, 0.0, 1.0)
        total = p.sum()
        if abs(total - 1.0) > 1e-8 + slack * max(1, len(self.outcomes)):
            raise NumericError(f"probabilities sum to {total!r}, not 1")
        self.probs = p
        self._index = None

    @staticmethod
    def _key(outcome):
        if isinstance(outcome, ModeOccupation):
            return outcome.counts
        return tuple(int(x) for x in outcome)

    def as_dict(self):
        """Outcome tuple -> probability."""
        return {self._key(o): float(p) for o, p in zip(self.outcomes, self.probs)}

    def prob_of(self, outcome):
        if self._index is None:
            self._index = self.as_dict()
        return self._index.get(self._key(outcome), 0.0)


def tvd(table_a, table_b):
    """Total variation distance, 0.5 * sum |p - q| over the outcome union."""
    da, db = table_a.as_dict(), table_b.as_dict()
    keys = set(da) | set(db)
    return 0.5 * sum(abs(da.get(k, 0.0) - db.get(k, 0.0)) for k in keys)


# --- probabilities ----------------------------------------------------------


def scattering_submatrix(U, in_occ, out_occ):
    """The n x n transition block for an (input, output) pattern pair.

    Row k = k-th input photon, column l = l-th output photon slot, with
    M[k, l] = U[out_mode(l), in_mode(k)] under the column-is-input-mode
    convention. Repeated output counts repeat the corresponding row of U.
    """
    if in_occ.n != out_occ.n:
        raise ValueError(
            f"photon-count mismatch: input has {in_occ.n}, output has {out_occ.n}")
    if in_occ.n == 0:
        raise ValueError("need at least one photon")
    rows = in_occ.mode_list()
    cols = out_occ.mode_list()
    return np.ascontiguousarray(U[np.ix_(cols, rows)].T)


def _output_factorial(out_occ):
    prod = 1
    for c in out_occ.counts:
        prod *= math.factorial(c)
    return prod


def compute_probability_fock(ev):
    """Probability of the event's FockDetection outcome; stores it on the event.

    p = gram_permanent(M, S) / prod_q out_q! with M the scattering submatrix
    and S the input model's Gram matrix. The bosonic and distinguishable
    limits collapse to |perm(M)|^2 and perm(|M|^2) and are dispatched
    directly.
    """
    if not isinstance(ev.measurement, FockDetection):
        raise TypeError("event measurement must be a FockDetection")
    out = ev.measurement.out
    if out.m != ev.interferometer.m:
        raise ValueError("output pattern and interferometer disagree on mode count")
    inp = ev.input
    if out.n != inp.n:
        raise ValueError(
            f"inconsistent photon totals: input {inp.n}, output {out.n}")
    if inp.n == 0:
        ev.result = 1.0
        return 1.0
    mat = scattering_submatrix(ev.interferometer.U, inp.occupation, out)
    model = inp.model
    if isinstance(model, Bosonic):
        value = abs(permanent_ryser(mat)) ** 2
    elif isinstance(model, Distinguishable):
        value = permanent_ryser(np.ascontiguousarray(np.abs(mat) ** 2)).real
    else:
        value = gram_permanent(mat, gram_of(model, inp.n))
    p = value / _output_factorial(out)
    if not -1e-12 <= p <= 1.0 + 1e-12:
        raise NumericError(f"probability {p!r} outside [0, 1] tolerance band")
    p = min(max(p, 0.0), 1.0)
    ev.result = p
    return p


def all_mode_occupations(n, m):
    """All ways to place n photons in m modes, in lexicographic order."""
    for combo in itertools.combinations_with_replacement(range(m), n):
        counts = [0] * m
        for q in combo:
            counts[q] += 1
        yield ModeOccupation(tuple(counts))


def full_distribution(inp, interf):
    """Exact photon-counting distribution over every output pattern.

    Enumerates all C(n+m-1, n) patterns (guarded at 10^6) and computes each
    probability with compute_probability_fock; the result sums to one within
    1e-8.
    """
    n, m = inp.n, inp.m
    count = math.comb(n + m - 1, n)
    if count > ENUMERATION_GUARD:
        raise GuardError(
            f"{count} output patterns exceed the enumeration guard "
            f"({ENUMERATION_GUARD})")
    outcomes = list(all_mode_occupations(n, m))
    probs = np.empty(len(outcomes))
    for i, out in enumerate(outcomes):
        probs[i] = compute_probability_fock(Event(inp, FockDetection(out), interf))
    return DistributionTable(outcomes, probs)


# --- event serialization ----------------------------------------------------


def _model_to_dict(model):
    if isinstance(model, Bosonic):
        return {"name": "bosonic"}
    if isinstance(model, Distinguishable):
        return {"name": "distinguishable"}
    if isinstance(model, OneParameterInterpolation):
        return {"name": "interpolation", "x": model.x}
    if isinstance(model, UserGram):
        return {
            "name": "gram",
            "re": model.S.real.tolist(),
            "im": model.S.imag.tolist(),
        }
    raise TypeError(f"unknown model {model!r}")


def _model_from_dict(doc):
    name = doc["name"]
    if name == "bosonic":
        return Bosonic()
    if name == "distinguishable":
        return Distinguishable()
    if name == "interpolation":
        return OneParameterInterpolation(doc["x"])
    if name == "gram":
        return UserGram(np.asarray(doc["re"], float) + 1j * np.asarray(doc["im"], float))
    raise ValueError(f"unknown model name {name!r}")


def _measurement_to_dict(meas):
    if isinstance(meas, FockDetection):
        return {"kind": "fock", "out": list(meas.out.counts)}
    if isinstance(meas, FockSample):
        return {"kind": "fock-sample"}
    if isinstance(meas, DarkCountFockSample):
        return {"kind": "dark-count", "p": meas.p}
    if isinstance(meas, PartitionCountsAll):
        subsets = [sorted(s.modes) for s in meas.partition.subsets]
        return {"kind": "partition", "subsets": subsets}
    raise TypeError(f"unknown measurement {meas!r}")


def _result_to_dict(result):
    if result is None:
        return None
    if isinstance(result, ModeOccupation):
        return {"kind": "occupation", "counts": list(result.counts)}
    if isinstance(result, DistributionTable):
        return {
            "kind": "table",
            "outcomes": [list(DistributionTable._key(o)) for o in result.outcomes],
            "probs": [float(p) for p in result.probs],
        }
    return {"kind": "probability", "value": float(result)}


def event_to_json(ev):
    doc = {
        "input": {
            "counts": list(ev.input.occupation.counts),
            "model": _model_to_dict(ev.input.model),
        },
        "measurement": _measurement_to_dict(ev.measurement),
        "interferometer": interferometer_to_dict(ev.interferometer),
        "result": _result_to_dict(ev.result),
    }
    return json.dumps(doc)


def event_from_json(text):
    """Rebuild an event; distribution-table results come back as plain dicts."""
    doc = json.loads(text)
    inp = Input(
        ModeOccupation(tuple(doc["input"]["counts"])),
        _model_from_dict(doc["input"]["model"]),
    )
    mdoc = doc["measurement"]
    if mdoc["kind"] == "fock":
        meas = FockDetection(ModeOccupation(tuple(mdoc["out"])))
    elif mdoc["kind"] == "fock-sample":
        meas = FockSample()
    elif mdoc["kind"] == "dark-count":
        meas = DarkCountFockSample(mdoc["p"])
    elif mdoc["kind"] == "partition":
        from .partitions import Partition, Subset
        interf_m = doc["interferometer"]["m"]
        subsets = tuple(Subset(interf_m, tuple(s)) for s in mdoc["subsets"])
        meas = PartitionCountsAll(Partition(subsets))
    else:
        raise ValueError(f"unknown measurement kind {mdoc['kind']!r}")
    interf = interferometer_from_dict(doc["interferometer"])
    ev = Event(inp, meas, interf)
    rdoc = doc["result"]
    if rdoc is not None:
        if rdoc["kind"] == "occupation":
            ev.result = ModeOccupation(tuple(rdoc["counts"]))
        elif rdoc["kind"] == "probability":
            ev.result = rdoc["value"]
        else:
            ev.result = rdoc
    return ev
