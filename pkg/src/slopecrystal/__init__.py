"""Crystals B(Lambda) for affine sl_n on colored multi-partitions, indexed by slope data."""
from .core import (
    Box,
    MultiPartition,
    add_box,
    addable_nodes,
    arm,
    color_of,
    content,
    dual,
    leg,
    multipartitions_up_to,
    remove_box,
    removable_nodes,
)
from .crystal import (
    CrystalGraph,
    bracket_string,
    e_op,
    export_dot,
    export_json,
    f_op,
    generate,
    graph_from_json,
    parallel_iso_check,
    weight_multiplicities,
)
from .monomial import (
    EdgeConstants,
    Monomial,
    a_monomial,
    constants_from_slope,
    e_bracket,
    e_direct,
    f_bracket,
    f_direct,
    psi,
    verify_psi_commutes,
)
from .regularity import (
    attracting_dimension,
    hook_triples,
    illegal_triples,
    is_regular,
    tangent_character,
)
from .slope import (
    LexScalar,
    Mode,
    SlopeDatum,
    height,
    is_aligned,
    make_generic,
    make_plain,
    make_row,
    make_row_prime,
)

__version__ = "0.1.0"
