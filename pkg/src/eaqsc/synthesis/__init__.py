from .blocks import (BlockSchedule, ScheduleStep, blocked_clear, blocked_symmetric_clear,
                     build_block_schedule, column_ops_to_identity, select_block_size)
from .encoders import (DEFAULT_ALPHA, EncoderResult, synth_eaqsc_encoder, synth_encoder,
                       synth_naive_encoder, synth_stabilizer_encoder, verify_encoder)
from .steps import clear_A_by_cnot, clear_C_by_cz, identity_to_D, reduce_IA, reduce_symmetric_B

__all__ = [
    "BlockSchedule", "ScheduleStep", "DEFAULT_ALPHA", "EncoderResult",
    "blocked_clear", "blocked_symmetric_clear", "build_block_schedule",
    "clear_A_by_cnot", "clear_C_by_cz", "column_ops_to_identity", "identity_to_D", "reduce_IA",
    "reduce_symmetric_B", "select_block_size", "synth_eaqsc_encoder", "synth_encoder",
    "synth_naive_encoder", "synth_stabilizer_encoder", "verify_encoder",
]
