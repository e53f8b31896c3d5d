"""Piecewise-linear natural directed paths, exactly.

A natural path of length eps in the n-cube is a monotone piecewise-linear
map from [0, eps] into [0,1]^n that starts at the corner 0_n and whose
coordinates sum to t at every time t.  Short paths (eps < 1) cannot reach
the far corner, which is what makes their start-behaviour a local invariant
of the cube complex.

Everything here is exact: breakpoint times and coordinates are Fractions,
so path equality, distances and germ comparisons are decided, not
approximated.  Paths are kept in canonical form (no breakpoint lying on the
segment through its neighbours), so structural equality coincides with
pointwise equality.

The family `gamma_h` witnesses how germs behave badly: each gamma_h runs
along the boundary edge until time h and is therefore germ-equal to a
boundary path, yet the family converges (in the sup metric, at speed h/2)
to the diagonal, which never touches the boundary again after 0.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import STAR, CubeId

Rational = Fraction | int


class PathError(ValueError):
    """An invalid path construction or operation."""


def _frac(x, where: str) -> Fraction:
    if isinstance(x, float):
        raise PathError(f"{where}: floating point value {x!r}; use Fraction")
    try:
        return Fraction(x)
    except (TypeError, ValueError):
        raise PathError(f"{where}: not a rational number: {x!r}") from None


def _canonical(times, values):
    """Drop every breakpoint that lies on the straight segment through its
    neighbours; the remaining data describes the same map."""
    keep = [0]
    for k in range(1, len(times) - 1):
        j = keep[-1]
        span = times[k + 1] - times[j]
        u = (times[k] - times[j]) / span
        straight = tuple(
            a + (b - a) * u for a, b in zip(values[j], values[k + 1])
        )
        if values[k] != straight:
            keep.append(k)
    keep.append(len(times) - 1)
    return (
        tuple(times[k] for k in keep),
        tuple(values[k] for k in keep),
    )


@dataclass(frozen=True)
class PLNaturalPath:
    """A piecewise-linear natural directed path from the initial corner.

    `times` are the breakpoint times 0 = t_0 < ... < t_m; `values` are the
    corresponding points of [0,1]^dim, linearly interpolated in between.
    Construction canonicalizes the breakpoints and checks every invariant:
    strictly increasing times, coordinates within [0,1] and non-decreasing,
    and the coordinate sum equal to the time at every breakpoint (which
    forces the start to be the corner).  The natural length is the final
    time; `make_path` additionally requires it to be short (< 1), while
    `extend_full` builds full-length paths directly.
    """

    carrier: CubeId
    times: tuple[Fraction, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not isinstance(self.carrier, CubeId):
            raise PathError(f"carrier must be a CubeId, got {self.carrier!r}")
        n = self.carrier.dim
        if n < 1:
            raise PathError("carrier must have dimension >= 1")
        times = tuple(
            _frac(t, f"breakpoint {k}") for k, t in enumerate(self.times)
        )
        values = tuple(
            tuple(
                _frac(x, f"breakpoint {k}, coordinate {i + 1}")
                for i, x in enumerate(v)
            )
            for k, v in enumerate(self.values)
        )
        if len(times) != len(values):
            raise PathError(
                f"{len(times)} breakpoints but {len(values)} value points"
            )
        if len(times) < 2:
            raise PathError("a path needs at least the breakpoints 0 and eps")
        for k, v in enumerate(values):
            if len(v) != n:
                raise PathError(
                    f"breakpoint {k}: point has {len(v)} coordinates, "
                    f"carrier has dimension {n}"
                )
        if times[0] != 0:
            raise PathError(f"breakpoint 0 must be at time 0, got {times[0]}")
        for k in range(1, len(times)):
            if times[k] <= times[k - 1]:
                raise PathError(
                    f"breakpoint {k}: time {times[k]} does not increase "
                    f"past {times[k - 1]}"
                )
        if times[-1] > n:
            raise PathError(
                f"natural length {times[-1]} exceeds the carrier dimension {n}"
            )
        times, values = _canonical(times, values)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        for k, v in enumerate(values):
            total = Fraction(0)
            for i, x in enumerate(v):
                if not 0 <= x <= 1:
                    raise PathError(
                        f"breakpoint {k}, coordinate {i + 1}: value {x} "
                        f"outside [0, 1]"
                    )
                if k and x < values[k - 1][i]:
                    raise PathError(
                        f"breakpoint {k}, coordinate {i + 1}: decreases "
                        f"from {values[k - 1][i]} to {x}"
                    )
                total += x
            if total != times[k]:
                raise PathError(
                    f"breakpoint {k}: coordinate sum {total} differs from "
                    f"time {times[k]}"
                )

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def eps(self) -> Fraction:
        """The natural length: the final breakpoint time."""
        return self.times[-1]

    def at(self, t: Rational) -> tuple[Fraction, ...]:
        """The point at time t, by linear interpolation."""
        t = _frac(t, "time")
        if not 0 <= t <= self.eps:
            raise PathError(f"time {t} outside [0, {self.eps}]")
        k = 1
        while self.times[k] < t:
            k += 1
        u = (t - self.times[k - 1]) / (self.times[k] - self.times[k - 1])
        return tuple(
            a + (b - a) * u
            for a, b in zip(self.values[k - 1], self.values[k])
        )

    def __str__(self) -> str:
        stops = "; ".join(
            f"{t} -> ({', '.join(map(str, v))})"
            for t, v in zip(self.times, self.values)
        )
        return f"path in {self.carrier.name} [{stops}]"


def standard_carrier(n: int) -> CubeId:
    """The standard n-cube as a path carrier."""
    return CubeId(STAR * n, n)


def make_path(carrier: CubeId, eps: Rational, breakpoints, values) -> PLNaturalPath:
    """Build a short natural path after checking every invariant.

    `breakpoints` must run from 0 to eps and `values` gives the point at
    each breakpoint; eps must be strictly between 0 and 1.
    """
    eps = _frac(eps, "eps")
    if not 0 < eps < 1:
        raise PathError(f"natural length must be in (0, 1), got {eps}")
    times = tuple(_frac(t, f"breakpoint {k}") for k, t in enumerate(breakpoints))
    if not times or times[-1] != eps:
        last = times[-1] if times else "nothing"
        raise PathError(f"final breakpoint {last} must equal eps = {eps}")
    return PLNaturalPath(carrier, times, tuple(tuple(v) for v in values))


def restrict(path: PLNaturalPath, eps2: Rational) -> PLNaturalPath:
    """The path truncated to [0, eps2], inserting a breakpoint if needed."""
    eps2 = _frac(eps2, "eps2")
    if not 0 < eps2 <= path.eps:
        raise PathError(
            f"restriction length {eps2} outside (0, {path.eps}]"
        )
    times = [t for t in path.times if t < eps2]
    values = list(path.values[: len(times)])
    times.append(eps2)
    values.append(path.at(eps2))
    return PLNaturalPath(path.carrier, tuple(times), tuple(values))


def extend_full(path: PLNaturalPath) -> PLNaturalPath:
    """Extend by one straight segment from the endpoint to the far corner,
    reaching 1_n at time n.  restrict() at the original length undoes it."""
    n = path.dim
    times = path.times + (Fraction(n),)
    values = path.values + ((Fraction(1),) * n,)
    return PLNaturalPath(path.carrier, times, values)


def _merged_times(a: PLNaturalPath, b: PLNaturalPath) -> list[Fraction]:
    return sorted(set(a.times) | set(b.times))


def _check_comparable(a: PLNaturalPath, b: PLNaturalPath) -> None:
    if a.carrier != b.carrier:
        raise PathError(
            f"paths live on {a.carrier.name!r} and {b.carrier.name!r}; "
            f"embed them into a common cube first"
        )
    if a.eps != b.eps:
        raise PathError(f"natural lengths differ: {a.eps} and {b.eps}")


def sup_distance(a: PLNaturalPath, b: PLNaturalPath) -> Fraction:
    """The exact sup over time of the max-norm distance.

    Both coordinates of both paths are affine between merged breakpoints,
    so the supremum is attained at a breakpoint.
    """
    _check_comparable(a, b)
    best = Fraction(0)
    for t in _merged_times(a, b):
        va, vb = a.at(t), b.at(t)
        for x, y in zip(va, vb):
            d = abs(x - y)
            if d > best:
                best = d
    return best


def convex_comb(u: Rational, a: PLNaturalPath, b: PLNaturalPath) -> PLNaturalPath:
    """The pointwise convex combination (1-u)a + u b; natural paths of a
    common length are closed under it."""
    u = _frac(u, "u")
    if not 0 <= u <= 1:
        raise PathError(f"combination weight {u} outside [0, 1]")
    _check_comparable(a, b)
    times = _merged_times(a, b)
    values = []
    for t in times:
        va, vb = a.at(t), b.at(t)
        values.append(tuple(x + (y - x) * u for x, y in zip(va, vb)))
    return PLNaturalPath(a.carrier, tuple(times), tuple(values))


def zero_set(path: PLNaturalPath) -> frozenset[int]:
    """The axes (1-based) on which the path is identically zero; a
    piecewise-linear coordinate vanishes iff it vanishes at breakpoints."""
    return frozenset(
        i + 1
        for i in range(path.dim)
        if all(v[i] == 0 for v in path.values)
    )


def _word_target(word: str, i: int) -> str | None:
    """The word obtained by freeing the letter that the lower face on axis
    i fixed to 0; None when no letter qualifies."""
    stars = 0
    for pos, ch in enumerate(word):
        if ch == STAR:
            stars += 1
        elif ch == "0" and stars == i - 1:
            return word[:pos] + STAR + word[pos + 1 :]
    return None


def embed_face(path: PLNaturalPath, i: int, alpha: int) -> PLNaturalPath:
    """View a path on a face as a path on the bigger cube, inserting the
    constant coordinate alpha at axis i.

    Only alpha = 0 keeps the start at the corner, so alpha = 1 is rejected.
    The target carrier name is inferred for standard-cube words: a full
    word gains an axis, a face word frees the letter the face had fixed.
    """
    if alpha != 0:
        raise PathError(
            "embedding on an upper face would not start at the corner"
        )
    n = path.dim
    if not 1 <= i <= n + 1:
        raise PathError(f"axis {i} out of range 1..{n + 1}")
    word = path.carrier.name
    if set(word) == {STAR} and len(word) == n:
        target = CubeId(STAR * (n + 1), n + 1)
    else:
        freed = _word_target(word, i) if set(word) <= {"0", "1", STAR} else None
        if freed is None:
            raise PathError(
                f"cannot name the target cube from carrier {word!r}"
            )
        target = CubeId(freed, n + 1)
    zero = Fraction(0)
    values = tuple(
        v[: i - 1] + (zero,) + v[i - 1 :] for v in path.values
    )
    return PLNaturalPath(target, path.times, values)


def germ_equal(a: PLNaturalPath, b: PLNaturalPath, eps2: Rational) -> bool:
    """Whether the two paths agree on the initial interval [0, eps2]."""
    eps2 = _frac(eps2, "eps2")
    if a.carrier != b.carrier:
        raise PathError(
            f"paths live on {a.carrier.name!r} and {b.carrier.name!r}; "
            f"embed them into a common cube first"
        )
    if not 0 < eps2 < min(a.eps, b.eps):
        raise PathError(
            f"germ horizon {eps2} outside (0, {min(a.eps, b.eps)})"
        )
    return restrict(a, eps2) == restrict(b, eps2)


def diagonal_path(n: int, eps: Rational) -> PLNaturalPath:
    """The straight diagonal of length eps in the n-cube: every coordinate
    grows at rate 1/n."""
    eps = _frac(eps, "eps")
    if n < 1:
        raise PathError("dimension must be >= 1")
    return make_path(
        standard_carrier(n),
        eps,
        (0, eps),
        ((Fraction(0),) * n, (eps / n,) * n),
    )


def gamma_h(h: Rational, eps: Rational = Fraction(1, 2)) -> PLNaturalPath:
    """The square path that follows the boundary edge until time h, then
    heads diagonally: breakpoints (0, h, eps), values ((0,0), (0,h),
    ((eps-h)/2, (eps+h)/2)).

    As h shrinks these paths converge to the diagonal at sup distance h/2,
    while each one is germ-equal to a boundary path at horizon h: the
    boundary's image in any germ quotient cannot be closed.
    """
    h = _frac(h, "h")
    eps = _frac(eps, "eps")
    if not 0 < h < eps < 1:
        raise PathError(f"need 0 < h < eps < 1, got h = {h}, eps = {eps}")
    lo, hi = (eps - h) / 2, (eps + h) / 2
    if not (0 < lo < 1 and 0 < hi < 1):
        raise PathError(f"endpoint ({lo}, {hi}) escapes the open square")
    zero = Fraction(0)
    return make_path(
        standard_carrier(2),
        eps,
        (0, h, eps),
        ((zero, zero), (zero, h), (lo, hi)),
    )


def sample(n: int, eps: Rational, m: int, seed: int) -> PLNaturalPath:
    """A pseudorandom natural path in the n-cube with m interior
    breakpoints, deterministic in the seed.

    Breakpoint times split [0, eps] by random positive weights; each step's
    time increment is split among the coordinates by random nonnegative
    weights summing to 1.  Consecutive steps are forced to use different
    directions so the canonical form keeps all m breakpoints; for n = 1
    naturality leaves only the straight path, which has none.
    """
    if n < 1:
        raise PathError("dimension must be >= 1")
    if m < 0:
        raise PathError("interior breakpoint count must be >= 0")
    eps = _frac(eps, "eps")
    if not 0 < eps < 1:
        raise PathError(f"natural length must be in (0, 1), got {eps}")
    rng = random.Random(seed)
    steps = m + 1
    weights = [rng.randint(1, 9) for _ in range(steps)]
    total = sum(weights)
    times = [Fraction(0)]
    for w in weights:
        times.append(times[-1] + eps * Fraction(w, total))
    times[-1] = eps
    values = [(Fraction(0),) * n]
    prev_dir = None
    for k in range(steps):
        dt = times[k + 1] - times[k]
        while True:
            split = [rng.randint(0, 9) for _ in range(n)]
            if sum(split) == 0:
                continue
            direction = tuple(Fraction(s, sum(split)) for s in split)
            if n == 1 or direction != prev_dir:
                break
        prev_dir = direction
        values.append(
            tuple(x + dt * d for x, d in zip(values[-1], direction))
        )
    return PLNaturalPath(standard_carrier(n), tuple(times), tuple(values))
