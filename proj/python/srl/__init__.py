"""Stable arithmetic regularity over F_p^n: Fourier analysis, order-property
search, density increments and the tree dichotomy."""

from ._core import (
    Error,
    GroupContext,
    SetIndicator,
    Subspace,
    balanced_function,
    budget_eval,
    cayley_partition_verify,
    coset_approximation,
    cover_or_witness,
    dft,
    dichotomy_tree_builder,
    find_order_witness,
    gen_example,
    gen_union_of_cosets,
    good_subspace_search,
    goodness,
    inverse_dft,
    random_set,
    random_subspace,
    stability_number,
    sumset,
    total_uniformity,
    uniformity,
    verify_order_witness,
    verify_tree_witness,
)

__all__ = [name for name in dir() if not name.startswith("_")]
