"""Groups of non-bijective transformations on a finite set, and the
residual/radical calculus of subgroup-closed group classes.

Core layers:

- ``transformation`` / ``transgroup``: maps on {0..n-1}, kernel partitions,
  group detection, and the induced permutation group on the quotient set.
- ``cayley``: abstract finite groups as validated multiplication tables.
- ``classes``: p-group and nilpotent classes, residuals and radicals.
- ``constructions``: cyclic/abelian/symmetric/dihedral builders, the
  semidirect counterexample family, and the order-(n-1)! witness group.
- ``search``: exhaustive idempotent and subset scans.
- ``service`` / ``cli``: an HTTP facade over the above and a thin client.
"""

from .errors import (
    CapExceededError,
    DomainMismatchError,
    IllDefinedMapError,
    InternalCheckError,
    NgroupsError,
    NotAGroupError,
    ParseError,
)
from .transformation import (
    ImageInfo,
    Partition,
    Transformation,
    can_be_identity,
    can_be_member,
    compose,
    image_rank,
    induced_map,
    is_idempotent,
    kernel_partition,
    power,
)
from .transgroup import (
    GroupRejection,
    PermGroup,
    TransGroup,
    check_group,
    common_kernel_image,
    generate_closure,
    group_report,
    is_ng_group,
    rho,
    try_group,
)
from .cayley import (
    CayleyGroup,
    Subgroup,
    all_subgroups,
    automorphism_group,
    are_isomorphic,
    from_transgroup,
    group_dump,
    group_load,
    induced_group,
    is_characteristic,
    is_normal,
    normal_closure,
    product_set,
    quotient_group,
    subgroup_generated,
    subnormal_depth,
)
from .classes import (
    GroupClass,
    abelian,
    belongs,
    check_radical_product,
    check_residual_product,
    nilpotent,
    p_group,
    parse_class,
    radical,
    residual,
    residual_monotone_check,
    subgroup_belongs,
    subnormal_join_in_class,
    verify_shp_axioms,
)
from .constructions import (
    SemidirectData,
    SemidirectSpec,
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    ng_witness,
    semidirect_q_p2,
    standard_group,
    symmetric_group,
    theorem33_report,
)
from .search import (
    ScanResult,
    enumerate_idempotents,
    exhaustive_ng_scan,
    h_class_group,
    h_class_maps,
    idempotent_count_formula,
    iter_partitions,
    max_ng_order,
)

__version__ = "0.1.0"
