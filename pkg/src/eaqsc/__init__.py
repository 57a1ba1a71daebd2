"""Encoder synthesis and exact decoding for stabilizer and entanglement-assisted codes."""

from .circuit import Circuit, Gate, apply_circuit, apply_gate, row_space_equal
from .code import (CheckMatrix, CodeParams, canonical_form, emit_check_matrix, parse_check_matrix,
                   random_code, raw_matrix, same_code, standard_form, validate)
from .decoding import (ChannelModel, DecodeResult, coset_probability, demld, emld,
                       error_probability, gw, sample_error, syndrome, wt)
from .errors import AuditError, FormatError, InvalidCodeError, ResourceGuardError
from .gf2 import BitMatrix, BitVector
from .synthesis import (EncoderResult, build_block_schedule, select_block_size, synth_eaqsc_encoder,
                        synth_encoder, synth_naive_encoder, synth_stabilizer_encoder, verify_encoder)

__version__ = "0.1.0"
