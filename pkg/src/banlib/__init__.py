"""Boolean automata networks: definition, dynamics and causal analysis.

Define a network from named Boolean rules, extract its signed interaction
graph, build its transition graphs under parallel, asynchronous, general or
block-sequential updating, enumerate attractors and basins, and analyze how
synchronism and imposed precedence shape what the network can do. All
analysis is exhaustive and exact, sized for networks of up to ~20 automata.
"""
from .attractor import (
    Attractor,
    AttractorReport,
    fixed_points,
    instability_profile,
    instability_trace,
    limit_cycles,
    render_report,
    terminal_sccs,
)
from .banfile import BanFileError, dumps, load_path, loads
from .dynamics import (
    DEFAULT_GENERAL_CAP,
    DEFAULT_PAIR_CAP,
    DEFAULT_STATE_CAP,
    NonexpansiveResult,
    TransitionGraph,
    async_successors,
    build_graph,
    check_nonexpansive,
    edge_lines,
    general_successors,
    instability_masks,
    parallel_step,
    to_dot,
)
from .errors import BanlibError, CapExceededError, InputError
from .formula import (
    And,
    ArcSign,
    Const,
    Formula,
    FormulaSyntaxError,
    Not,
    Or,
    UnknownVariableError,
    Var,
    Xor,
    arc_sign,
    evaluate,
    fold_constants,
    parse,
    semantic_deps,
    substitute,
    to_text,
    truth_table,
    var_indices,
)
from .network import (
    Arc,
    Ban,
    NetworkError,
    SignedCycle,
    SignedDigraph,
    State,
    build_igraph,
    enumerate_cycles,
    gen_cycle,
    gen_figure_ban,
    state_to_str,
    str_to_state,
    unstable_set,
)
from .schedule import (
    BlockSchedule,
    InfeasibleNuError,
    NuLabeling,
    ScheduleError,
    blocks_to_nu,
    degree_of_synchronism,
    nu_equivalent,
    nu_realizable,
    parse_block_schedule,
    period_function,
)
from .sensitivity import (
    EmulationReport,
    HiddenVariableError,
    PrecedenceError,
    PrecedenceSpec,
    SensitivityReport,
    SyncTransitionVerdict,
    classify_sync_transitions,
    effective_function,
    emulation_equivalent,
    is_synchronism_sensitive,
    parse_precedence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
