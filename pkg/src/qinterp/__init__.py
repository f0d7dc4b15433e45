"""Exact piecewise linear maps of the rationals and the interpretation of
rational points inside their automorphism group and endomorphism monoid."""
from .errors import (
    ActionMismatch,
    DomainError,
    DSLSyntaxError,
    IterationBudgetExceeded,
    NotAutomorphism,
    NotBump,
    NotCofinal,
    NotEmbedding,
    NotEpimorphism,
    NotRepresentable,
    PreconditionViolated,
    QInterpError,
)
from .intervals import NEG_INF, POS_INF, Interval, IntervalSet
from .plmap import (
    MapClass,
    PLMap,
    bump,
    classify,
    compose,
    conjugate,
    factorize,
    fixed_points,
    image,
    invert,
    is_automorphism,
    right_inverse,
    support,
)
from .dsl import parse_any, parse_lift, parse_map, pretty_lift, pretty_map
from .orbitals import Orbital, OrbitalPattern, conjugator, is_conjugate, orbitals_of, pattern
from .predicates import (
    BumpKind,
    Comparability,
    SupportRelation,
    bump_kind,
    comparability,
    gap_bumps,
    is_bump,
    support_relation,
)
from .interpretation import (
    CodedRational,
    act1_check,
    act2_witness,
    act3_witness,
    act4_witness,
    cofinal_rep,
    decode,
    encode,
    endo_act,
    epi_act,
    group_act,
    linear_between,
    monoid_act,
)
from .gauge import CircleLift, GaugeCandidate, IntervalEst, NotGaugePair, RationalCert, gauge_check, rotation_number

__version__ = "0.1.0"
