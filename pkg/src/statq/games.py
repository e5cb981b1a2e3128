"""Classical distinguishing games for the hashed PRF, with budgeted adversaries.

Both games share a lazily sampled hash oracle.  The challenge oracle either
evaluates the real construction ``x -> H(h(key, x))`` for a key drawn once
per game, or an independent random function.  An adversary interacts with
the two oracles under per-oracle query budgets, enforced by hosting it
through a static-order session, and outputs a bit; the distinguishing
advantage is the difference of its acceptance frequencies across the two
games, estimated by Monte Carlo over seeded trials.

Each challenge query must be fresh: its ``h`` image must differ from that
of every prior challenge query under every possible key.  The harness
re-checks this exhaustively over the (toy-sized) key space and rejects
violating adversaries.

Everything here is classical point queries; superposition access is out of
scope.  Reports include a square-root-style reference bound that concerns
quantum-query adversaries; it is never asserted against the classical
estimate.  The asserted classical ceiling is ``q_hash * epsilon``.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable

from .interposer import BudgetExceeded, MODE_DUMMY, OracleBinding, Session
from .randomness import LazyRandomFunction, derive_int, derive_seed, substream
from .schedule import Characteristic

__all__ = [
    "ORACLE_HASH",
    "ORACLE_PRF",
    "HOST_INTERPOSER",
    "HOST_DIRECT",
    "FreshnessViolation",
    "HFunction",
    "KeyPrefixH",
    "GameParams",
    "GameView",
    "Adversary",
    "ConstantAdversary",
    "RandomGuessAdversary",
    "KeyGuessingAdversary",
    "TwoPointProbeAdversary",
    "ADVERSARIES",
    "build_adversary",
    "run_game",
    "AdvantageEstimate",
    "estimate_advantage",
    "classical_bound",
    "quantum_bound_reference",
    "advantage_report",
]

ORACLE_HASH = 1
ORACLE_PRF = 2

HOST_INTERPOSER = "interposer"
HOST_DIRECT = "direct"
_HOSTS = (HOST_INTERPOSER, HOST_DIRECT)


class FreshnessViolation(Exception):
    """A challenge query repeats a prior query's ``h`` image under some key."""

    def __init__(self, x: bytes, prior: bytes, key: int) -> None:
        super().__init__(
            f"challenge query {x!r} collides with prior query {prior!r} under key {key}"
        )
        self.x = x
        self.prior = prior
        self.key = key


class HFunction(ABC):
    """Keyed map from challenge inputs to hash points, with known spread."""

    name: str

    @abstractmethod
    def eval(self, key: int, x: bytes) -> bytes: ...


class KeyPrefixH(HFunction):
    """``h(key, x) = key || x``: injective in the key, so for any fixed input
    the chance of hitting a given point over a uniform key is 1/key_count."""

    name = "key-prefix"

    def __init__(self, key_count: int) -> None:
        if key_count < 1:
            raise ValueError("key count must be positive")
        self.key_count = key_count

    def eval(self, key: int, x: bytes) -> bytes:
        if not 0 <= key < self.key_count:
            raise ValueError(f"key {key} outside 0..{self.key_count - 1}")
        return key.to_bytes(4, "big") + bytes(x)


@dataclass(frozen=True)
class GameParams:
    """Everything one game run depends on; ``seed`` fixes all randomness."""

    key_count: int
    h: HFunction
    epsilon: Fraction
    q_hash: int
    q_prf: int
    seed: int
    out_len: int = 8

    def __post_init__(self) -> None:
        if self.key_count < 1:
            raise ValueError("key count must be positive")
        if self.q_hash < 0 or self.q_prf < 0:
            raise ValueError("budgets must be non-negative")
        if self.out_len < 1:
            raise ValueError("output length must be positive")
        if not 0 < self.epsilon <= 1:
            raise ValueError("epsilon must lie in (0, 1]")


class GameView:
    """Adversary-facing access: budgeted hash and challenge queries plus coins.

    Freshness of challenge queries is checked here, before the query reaches
    the transport, so filler traffic generated below never trips it.
    """

    def __init__(self, params: GameParams, transport, rng) -> None:
        self.params = params
        self.rng = rng
        self._transport = transport
        self._prior_prf: list[bytes] = []

    def hash_query(self, w: bytes) -> bytes:
        return self._transport(ORACLE_HASH, bytes(w))

    def prf_query(self, x: bytes) -> bytes:
        x = bytes(x)
        h = self.params.h
        for prior in self._prior_prf:
            for key in range(self.params.key_count):
                if h.eval(key, x) == h.eval(key, prior):
                    raise FreshnessViolation(x, prior, key)
        response = self._transport(ORACLE_PRF, x)
        self._prior_prf.append(x)
        return response


class Adversary(ABC):
    """Interactive strategy: query the oracles, output a bit."""

    name: str

    @abstractmethod
    def play(self, view: GameView) -> int: ...


class ConstantAdversary(Adversary):
    """Makes no queries and always outputs the same bit."""

    def __init__(self, bit: int = 0) -> None:
        if bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")
        self.bit = bit
        self.name = f"constant-{bit}"

    def play(self, view: GameView) -> int:
        return self.bit


class RandomGuessAdversary(Adversary):
    """Ignores the oracles and outputs a fair coin."""

    name = "random-guess"

    def play(self, view: GameView) -> int:
        return view.rng.getrandbits(1)


class KeyGuessingAdversary(Adversary):
    """Queries the challenge once, then spends the hash budget recomputing the
    construction under guessed keys; accepts on any match.

    This is the strongest generic classical strategy: it wins when the real
    key lands among its ``q_hash`` guesses, so its advantage approaches
    ``q_hash * epsilon``.
    """

    name = "key-guess"

    def play(self, view: GameView) -> int:
        params = view.params
        if params.q_prf < 1 or params.q_hash < 1:
            return 0
        x = b"probe"
        y = view.prf_query(x)
        guesses = view.rng.sample(
            range(params.key_count), min(params.q_hash, params.key_count)
        )
        for key in guesses:
            if view.hash_query(params.h.eval(key, x)) == y:
                return 1
        return 0


class TwoPointProbeAdversary(Adversary):
    """Probes two fresh challenge points and splits the hash budget between
    them; exercises interleaved (adaptive) oracle traffic."""

    name = "two-point-probe"

    def play(self, view: GameView) -> int:
        params = view.params
        points = [b"left", b"right"][: min(2, params.q_prf)]
        if not points or params.q_hash < len(points):
            return 0
        responses = [view.prf_query(x) for x in points]
        per_point = params.q_hash // len(points)
        for x, y in zip(points, responses):
            guesses = view.rng.sample(
                range(params.key_count), min(per_point, params.key_count)
            )
            for key in guesses:
                if view.hash_query(params.h.eval(key, x)) == y:
                    return 1
        return 0


ADVERSARIES: dict[str, Callable[[], Adversary]] = {
    "constant-0": lambda: ConstantAdversary(0),
    "random-guess": RandomGuessAdversary,
    "key-guess": KeyGuessingAdversary,
    "two-point-probe": TwoPointProbeAdversary,
}


def build_adversary(name: str) -> Adversary:
    try:
        factory = ADVERSARIES[name]
    except KeyError:
        raise ValueError(
            f"unknown adversary {name!r}; known: {sorted(ADVERSARIES)}"
        ) from None
    return factory()


def _make_transport(params: GameParams, handlers: dict[int, Callable], host: str):
    if host == HOST_INTERPOSER:
        bindings = [
            OracleBinding(ORACLE_HASH, handlers[ORACLE_HASH], dummy_payload=b""),
            OracleBinding(ORACLE_PRF, handlers[ORACLE_PRF], dummy_payload=b""),
        ]
        session = Session(
            Characteristic((params.q_hash, params.q_prf)), bindings, mode=MODE_DUMMY
        )
        return session.query
    declared = {ORACLE_HASH: params.q_hash, ORACLE_PRF: params.q_prf}
    counts = {ORACLE_HASH: 0, ORACLE_PRF: 0}

    def transport(oracle_id: int, payload: bytes) -> bytes:
        if counts[oracle_id] >= declared[oracle_id]:
            raise BudgetExceeded(oracle_id, counts[oracle_id] + 1, declared[oracle_id])
        counts[oracle_id] += 1
        return handlers[oracle_id](payload)

    return transport


def run_game(
    params: GameParams,
    adversary: Adversary,
    branch: int,
    *,
    host: str = HOST_INTERPOSER,
    force_random: bool = False,
) -> int:
    """Play one game and return the adversary's output bit.

    ``branch`` = 1 serves the real construction from the challenge oracle,
    0 serves an independent random function.  ``force_random`` serves the
    random function in both branches (a null harness check).  The outcome
    is a deterministic function of (params, adversary, branch) and does not
    depend on the host.
    """
    if branch not in (0, 1):
        raise ValueError("branch must be 0 or 1")
    if host not in _HOSTS:
        raise ValueError(f"host must be one of {_HOSTS}, got {host!r}")
    hash_oracle = LazyRandomFunction(derive_seed(params.seed, "hash-table"), params.out_len)
    random_oracle = LazyRandomFunction(derive_seed(params.seed, "rand-table"), params.out_len)
    key = substream(params.seed, "key").randrange(params.key_count)
    coins = substream(params.seed, "coins")
    if branch == 1 and not force_random:
        challenge = lambda x: hash_oracle(params.h.eval(key, x))  # noqa: E731
    else:
        challenge = random_oracle
    transport = _make_transport(
        params, {ORACLE_HASH: hash_oracle, ORACLE_PRF: challenge}, host
    )
    bit = adversary.play(GameView(params, transport, coins))
    if bit not in (0, 1):
        raise ValueError(f"adversary returned {bit!r}, expected a bit")
    return bit


@dataclass(frozen=True)
class AdvantageEstimate:
    """Monte Carlo estimate of the distinguishing advantage with a 95% CI."""

    estimate: float
    std_err: float
    ci_low: float
    ci_high: float
    p_real: float
    p_random: float
    trials: int


def estimate_advantage(
    params: GameParams,
    adversary: Adversary,
    trials: int,
    *,
    host: str = HOST_INTERPOSER,
    force_random: bool = False,
) -> AdvantageEstimate:
    """Difference of empirical acceptance frequencies over seeded trials.

    Each (branch, trial) pair runs under its own derived seed, so the two
    frequency estimates are independent and the whole estimate is
    reproducible from ``params.seed``.  The interval is the normal
    approximation for a difference of binomial proportions.
    """
    if trials < 100:
        raise ValueError("need at least 100 trials for a meaningful estimate")
    hits = [0, 0]
    for branch in (0, 1):
        for trial in range(trials):
            trial_params = replace(
                params,
                seed=derive_int(params.seed, adversary.name, branch, trial),
            )
            hits[branch] += run_game(
                trial_params, adversary, branch, host=host, force_random=force_random
            )
    p_random = hits[0] / trials
    p_real = hits[1] / trials
    std_err = math.sqrt(
        p_real * (1 - p_real) / trials + p_random * (1 - p_random) / trials
    )
    estimate = p_real - p_random
    return AdvantageEstimate(
        estimate=estimate,
        std_err=std_err,
        ci_low=estimate - 1.96 * std_err,
        ci_high=estimate + 1.96 * std_err,
        p_real=p_real,
        p_random=p_random,
        trials=trials,
    )


def classical_bound(params: GameParams) -> float:
    """Ceiling on any classical distinguisher's advantage: q_hash * epsilon."""
    return float(params.q_hash * params.epsilon)


def quantum_bound_reference(params: GameParams) -> float:
    """Reference bound for quantum-query adversaries; reported, never asserted.

    No classical simulation can validate it, so reports carry it for context
    only: ``4*sqrt(2*q_prf^2*q_hash*eps) + 4*sqrt(2*q_hash^2*q_prf*eps)``.
    """
    eps = float(params.epsilon)
    q_h, q_o = params.q_hash, params.q_prf
    return 4 * math.sqrt(2 * q_o * q_o * q_h * eps) + 4 * math.sqrt(
        2 * q_h * q_h * q_o * eps
    )


def advantage_report(
    params: GameParams,
    adversary: Adversary,
    trials: int,
    *,
    host: str = HOST_INTERPOSER,
    force_random: bool = False,
) -> dict:
    """JSON-ready report of one advantage estimation run."""
    est = estimate_advantage(
        params, adversary, trials, host=host, force_random=force_random
    )
    return {
        "params": {
            "key_count": params.key_count,
            "h": params.h.name,
            "epsilon": float(params.epsilon),
            "q_hash": params.q_hash,
            "q_prf": params.q_prf,
            "seed": params.seed,
            "out_len": params.out_len,
        },
        "adversary": adversary.name,
        "host": host,
        "force_random": force_random,
        "trials": trials,
        "adv_estimate": est.estimate,
        "ci": [est.ci_low, est.ci_high],
        "p_real": est.p_real,
        "p_random": est.p_random,
        "classical_bound": classical_bound(params),
        "quantum_bound_reference": quantum_bound_reference(params),
    }
