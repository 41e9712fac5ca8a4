"""Integration tests for derivations, inner derivations and simplicity of the Jordan constructions."""

import numpy as np
import pytest

from supermagic.lib import catalog
from supermagic.lib.composition import make_hurwitz, make_symmetric
from supermagic.lib.jordan import check_D_i_identities, check_derJ_grading, check_inner_equals, make_H3, make_K3
from supermagic.lib.operators import derivations
from supermagic.lib.simplicity import check_simplicity, is_simple
from supermagic.lib.triality import osp, tri_basis
from supermagic.types import CheckStatus, CompositionName, SimplicityVerdict


@pytest.fixture(autouse=True)
def fresh_catalog():
    catalog.clear()
    yield
    catalog.clear()


class TestDerivationStructure:
    """der H3(C) through tri(S) and the D_i(S)."""

    @pytest.mark.parametrize("name", [CompositionName.S12, CompositionName.S42])
    def test_superalgebras(self, name, field3):
        """der J = D_tri ⊕ D_0 ⊕ D_1 ⊕ D_2 with the closed forms of D_i."""
        H = make_H3(make_hurwitz(name, field3))
        assert check_derJ_grading(H, tri_basis(H.S)).status == CheckStatus.PASS
        assert check_D_i_identities(H).status == CheckStatus.PASS

    @pytest.mark.parametrize(
        "name,codim",
        [
            (CompositionName.S1, 0),
            (CompositionName.S2, 1),
            (CompositionName.S4, 0),
            (CompositionName.S12, 0),
            (CompositionName.S42, 0),
        ],
    )
    def test_inner_derivations(self, name, codim, field3):
        """Every derivation is inner except for one outer derivation of H3(k×k)."""
        report = check_inner_equals(make_H3(make_hurwitz(name, field3)).J, codim)
        assert report.status == CheckStatus.PASS

    @pytest.mark.slow
    def test_inner_derivations_albert(self, field3):
        """der H3(Cayley) = inder H3(Cayley)."""
        report = check_inner_equals(make_H3(make_hurwitz(CompositionName.S8, field3)).J, 0)
        assert report.status == CheckStatus.PASS

    def test_der_K3_is_osp(self, field3):
        """der K3 is the orthosymplectic superalgebra of the B(1,2) form."""
        assert derivations(make_K3(field3)).equal(osp(make_symmetric(CompositionName.S12, field3)))

    def test_tri_S12_is_diagonal(self, field3):
        """Every element of tri(S12) is of the form (d, d, d)."""
        T = tri_basis(make_symmetric(CompositionName.S12, field3))
        for t in T.elements:
            assert (t.d0 == t.d1).all()
            assert (t.d0 == t.d2).all()


class TestSimplicity:
    """Simplicity verdicts of the randomized test."""

    @pytest.mark.parametrize("name", ["g:S1,S1", "K9", "der:H3:S12", "str:K9"])
    def test_simple(self, name, field3, engine_config):
        """These algebras are simple."""
        report = check_simplicity(catalog.resolve(name, field3), SimplicityVerdict.SIMPLE, engine_config)
        assert report.status == CheckStatus.PASS

    @pytest.mark.parametrize("name", ["der:H3:S2", "str:H3:S12", "str:H3:S42"])
    def test_not_simple(self, name, field3, engine_config):
        """These algebras have a proper ideal, returned as a witness."""
        report = check_simplicity(catalog.resolve(name, field3), SimplicityVerdict.NOT_SIMPLE, engine_config)
        assert report.status == CheckStatus.PASS
        assert report.details["ideal_dim"] > 0

    def test_str_witness_is_the_central_line(self, field3, engine_config):
        """The ideal found in str H3(B(1,2)) is span{L_1}."""
        pair = catalog.entry("str:H3:S12", field3).source
        result = is_simple(pair.str_algebra, config=engine_config)
        assert result.ideal.dim == 1
        assert result.ideal.equal(pair.center_line)
        identity = np.eye(pair.J.dim, dtype=np.int64)
        assert pair.space.contains(identity)
