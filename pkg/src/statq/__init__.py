"""statq: static-order query scheduling for adaptive multi-oracle algorithms.

The core takes a per-oracle query budget vector and compiles any adaptive
client into one whose sequence of contacted oracles is fixed up front, at
the cost of at most an n-fold blow-up per oracle (n being the number of
oracles).  On top of that sits a worked application: a hash-based split-key
PRF, the KEM combiner derived from it, and a classical security-game
harness that hosts distinguishers through the static-order machinery.
"""

from .embedding import EmbeddingState, Exhausted, embed_offline
from .games import (
    ADVERSARIES,
    Adversary,
    AdvantageEstimate,
    ConstantAdversary,
    FreshnessViolation,
    GameParams,
    GameView,
    KeyGuessingAdversary,
    KeyPrefixH,
    RandomGuessAdversary,
    TwoPointProbeAdversary,
    advantage_report,
    build_adversary,
    classical_bound,
    estimate_advantage,
    quantum_bound_reference,
    run_game,
)
from .interposer import (
    BudgetExceeded,
    OracleBinding,
    QueryTranscript,
    Session,
    TranscriptRecord,
    check_transcript,
    run_wrapped,
)
from .randomness import LazyRandomFunction, derive_seed, substream
from .schedule import (
    Characteristic,
    LineSequence,
    Schedule,
    ScheduleOverflowError,
    TimePoint,
    build_line_sequence,
    build_universal_schedule,
    characteristic_of,
    project,
    schedule_from_json,
    schedule_to_json,
)
from .skprf import (
    CombinedKem,
    GFunction,
    KemScheme,
    Shake256Hash,
    SkPrfInstance,
    SplitKey,
    ToyXorKem,
    encode_hash_input,
    g_eval,
    skprf_eval,
)
from .verify import (
    GuardLimits,
    GuardViolation,
    check_universal,
    enumerate_bounded,
    find_counterexample,
    is_subsequence_dp,
)

__version__ = "0.1.0"
