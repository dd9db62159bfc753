"""Lorentz-Zygmund quasi-norms, Nikol'skii bound factors for band-limited
functions, and Besov embeddings of logarithmic smoothness."""

from .spaces import INF, ZERO, HypothesisError, LogPair, SpaceParams, TrivialSpaceError, broken_log_eval, broken_loglog_eval, nontrivial
from .rearrange import SampledFunction, StepFunction, rearrange
from .lznorm import lemma2_factor, lz_norm, lz_norm_of
from .bandlimited import BandlimitedFunction, FamilySpec, Spectrum, make_random_bandlimited, make_sinc_power, spectrum_measure
from .nikolskii import BoundResult, classify, nikolskii_bound, probe_sharpness, sweep, verify_inequality
from .besov import BesovParams, besov_norm, build_partition, embedding_shift, verify_embedding

__all__ = [
    "INF", "ZERO", "HypothesisError", "LogPair", "SpaceParams", "TrivialSpaceError",
    "broken_log_eval", "broken_loglog_eval", "nontrivial",
    "SampledFunction", "StepFunction", "rearrange",
    "lemma2_factor", "lz_norm", "lz_norm_of",
    "BandlimitedFunction", "FamilySpec", "Spectrum", "make_random_bandlimited", "make_sinc_power", "spectrum_measure",
    "BoundResult", "classify", "nikolskii_bound", "probe_sharpness", "sweep", "verify_inequality",
    "BesovParams", "besov_norm", "build_partition", "embedding_shift", "verify_embedding",
]
