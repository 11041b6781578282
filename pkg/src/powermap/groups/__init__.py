from .core import (
    BudgetExceeded,
    FiniteGroup,
    element_order,
    element_power,
    orders_all,
    power_all,
)
from .families import (
    LIMITS,
    CyclicGroup,
    DihedralGroup,
    HeisenbergGroup,
    PermutationGroup,
    ProductGroup,
    SL2Group,
    SymmetricGroup,
)
from .field import FieldContext
from .spec import (
    CatalogError,
    GroupSpec,
    dump_catalog,
    load_catalog,
    parse_descriptor,
    realize,
)

__all__ = [
    "BudgetExceeded",
    "CatalogError",
    "CyclicGroup",
    "DihedralGroup",
    "FieldContext",
    "FiniteGroup",
    "GroupSpec",
    "HeisenbergGroup",
    "LIMITS",
    "PermutationGroup",
    "ProductGroup",
    "SL2Group",
    "SymmetricGroup",
    "dump_catalog",
    "element_order",
    "element_power",
    "load_catalog",
    "orders_all",
    "parse_descriptor",
    "power_all",
    "realize",
]
