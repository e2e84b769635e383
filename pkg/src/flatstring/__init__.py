"""Virtual n-strings as signed multi-component Gauss codes: carrier-surface
genus, flat Reidemeister moves, trigon orbits, monotone crossing reduction,
bounded equivalence search, and the packaged 3-string counterexample
verifier."""

from .gausscode import (CodeSyntaxError, Crossing, FlatstringError, GaussCode,
                        Passage, ValidationError, canonical_form, canonical_text,
                        mirror, parse, parse_file, permute, relabel, rotate,
                        serialize)
from .surface import (Face, FaceDecomposition, SurfaceReport, carter_genus,
                      diagram_components, trace_faces)
from .moves import (Move, MoveSite, StaleSiteError, apply_move,
                    enumerate_decreasing, enumerate_increasing, enumerate_r3)
from .search import (DEFAULT_ORBIT_CAP, EquivalenceVerdict, InconclusiveError,
                     IrreducibilityResult, OrbitSummary, ReductionResult,
                     ReductionTrace, ScrambleResult, WitnessStep,
                     equivalent_bounded, is_crossing_irreducible, reduce_monotone,
                     replay_witness, scramble, type3_orbit)
from .classify import ClassReport, PairFlag, classify, parallel_heuristic
from .corpus import (CorpusEntry, check_entries, load_corpus, load_genus_table,
                     parse_corpus)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
