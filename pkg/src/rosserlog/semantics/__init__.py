"""Frames, models, validators, the model checker and generators."""
from .frames import (
    Check, GRoFrame, InvalidFrameError, ValidationReport, is_nontrivial, is_serial,
    relation, root_of, serial_completion, standard_relation, validate_gro_frame,
)
from .generate import admissible_targets, random_formula, random_frame, random_model
from .io import ModelFormatError, model_from_json, model_to_json, world_id
from .models import (
    AxiomReport, FragmentError, GRMinusModel, GRoModel, NModel, UnknownWorldError,
    add_root, axiom_instances, eval_grminus, eval_n, evaluate, model, validate_grminus_model,
)
