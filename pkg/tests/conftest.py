import pytest

from psf import Complex, join
from psf.build import boundary_simplex, one_vertex_suspension, stacked_sphere
from psf.corpus import (
    edge_folded_instance,
    handle_instance,
    linear_chain,
    suspension_instance,
    vertex_folded_instance,
)


@pytest.fixture(scope="session")
def shared_corpus():
    """Assorted normal 4-pseudomanifolds reused by the corpus-wide criteria."""
    circle = Complex([[3, 4], [4, 5], [3, 5]])
    items = [
        ("boundary", boundary_simplex(5)),
        ("stacked-2", stacked_sphere(4, 2, 11)),
        ("stacked-5", stacked_sphere(4, 5, 12)),
        ("chain", linear_chain(4, 8, 13, fixed=(0,))),
        ("vfold-1", vertex_folded_instance(101).complex),
        ("vfold-2", vertex_folded_instance(102, folds=2, sums=1).complex),
        ("vfold-decorated", vertex_folded_instance(103, sums=2, subdivisions=2).complex),
        ("efold-1", edge_folded_instance(104).complex),
        ("efold-mixed", edge_folded_instance(105, edge_folds=1, vertex_folds=1).complex),
        ("handle", handle_instance(106).complex),
        ("suspension", suspension_instance(107).complex),
        ("suspension-decorated", suspension_instance(108, sums=1, subdivisions=1).complex),
        ("suspension-of-sphere", one_vertex_suspension(linear_chain(3, 4, 109, fixed=(0,)), 0)),
        ("suspension-of-join", one_vertex_suspension(join(boundary_simplex(2), circle), 0)),
    ]
    return items
