"""podsim: belief contagion on social graphs with institutional broadcasters.

A deterministic, seedable agent-based simulation engine plus analysis
tools: contagion probability kernels, random-graph generators, the
message-passing opinion-diffusion loop, and path-probability analysis
of why some contagion rules are insensitive to topology.
"""

from podsim.contagion import (
    DCC,
    ComplexContagion,
    LinearCognitive,
    SigmoidCognitive,
    SimpleContagion,
    ThresholdCognitive,
    UnsupportedModelError,
    beta_table,
    beta_table_csv,
    contagion_prob,
    linear_beta,
    min_infected_neighbors,
    sigmoid_beta,
    threshold_beta,
)
from podsim.graphs import (
    GraphSpec,
    SocialGraph,
    assign_beliefs,
    gen_ba,
    gen_er,
    gen_mag,
    gen_ws,
    generate,
    homophily,
    mag_affinity,
)
from podsim.schedule import (
    ExplicitSchedule,
    GradualSchedule,
    SingleSchedule,
    SplitSchedule,
    schedule_levels,
)
from podsim.engine import (
    BatchTrace,
    Institution,
    Message,
    Simulation,
    run,
    run_batch,
    subscribe,
)
from podsim.paths import (
    INSTITUTION,
    PathCensusRow,
    TransmissionPath,
    believing_neighbors,
    disjoint_paths_greedy,
    max_probability_path,
    path_census,
    path_probability,
    tau_path_exists,
)

__version__ = "0.1.0"
