"""Rate-region workbench for K-receiver DM broadcast channels carrying two
nested multicast messages: a common message decoded by every receiver and a
private message decoded by a subset of "private" receivers.

Submodules:

* ``probkit``   -- finite-alphabet probability and mutual-information primitives
* ``ordering``  -- degraded / less-noisy / more-capable pairwise channel tests
* ``regions``   -- per-distribution achievable-rate polygons and the split-rate
                   reliability polytope
* ``fme``       -- exact rational Fourier-Motzkin elimination and polyhedron
                   equality checks
* ``optimize``  -- supporting-line search for the union over coding
                   distributions
* ``classify``  -- capacity-class detection and capacity-region reports
* ``cli``       -- the ``nestedcast`` command-line entry point
"""

from .probkit import (
    ProbVector,
    ChannelMatrix,
    BroadcastSpec,
    MarkovChain,
    MITable,
    ValidationError,
    entropy,
    mutual_info,
    chain_joint,
    eval_mi_table,
    bsc,
    bec,
    identity_channel,
    constant_channel,
)
from .ordering import SearchConfig, OrderVerdict, is_degraded, is_less_noisy, is_more_capable, ordering_graph
from .regions import (
    Halfspace2D,
    RegionPolygon,
    SchemeId,
    region_superposition,
    region_thm2,
    region_cor1,
    region_special,
    region_jointdec,
    splitrate_system,
    halfspaces_to_polygon,
)
from .fme import LinearSystem, eliminate, remove_redundant, project, poly_equal, verify_lemma2, verify_lemma3
from .optimize import SupportPoint, UnionReport, support_value, union_region, compare_schemes
from .classify import ClassReport, classify_theorem1, classify_theorem3, capacity_report

__version__ = "0.1.0"
