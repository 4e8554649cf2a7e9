"""Normal logic programs under the well-founded semantics."""

from .engine import (
    ThreeValuedModel,
    ground,
    num_strata,
    stratified_minimal_model,
    stratify,
    well_founded_model,
)
from .generators import (
    accepted,
    gen_conflict_program,
    gen_gamma_d_program,
    gen_kb_program,
    gen_setaf_program,
    kb_facts,
    kb_signature,
)
from .program import LAtom, NormalProgram, Rule, Variable, format_program, parse_program

__all__ = [
    "LAtom", "NormalProgram", "Rule", "ThreeValuedModel", "Variable", "accepted",
    "format_program", "gen_conflict_program", "gen_gamma_d_program", "gen_kb_program",
    "gen_setaf_program", "ground", "kb_facts", "kb_signature", "num_strata",
    "parse_program", "stratified_minimal_model", "stratify", "well_founded_model",
]
