"""Integration tests for the isomorphisms between cells and Jordan constructions."""

import pytest

from supermagic.lib.isomaps import build_phi2, build_phi3, build_psi, projected_phi2, verify_theorem
from supermagic.types import CheckStatus, CompositionName, IsomorphismName

S2, S4, S8, S12, S42 = (
    CompositionName.S2,
    CompositionName.S4,
    CompositionName.S8,
    CompositionName.S12,
    CompositionName.S42,
)


def _all_pass(reports):
    failed = [(r.name, r.witnesses[:1]) for r in reports if r.status != CheckStatus.PASS]
    assert not failed, failed


class TestPhi1:
    """g(S1, S) ≅ der H3(C)."""

    @pytest.mark.parametrize("S", [S2, S4, S12, S42])
    def test_phi1(self, S, field3):
        """Φ is a bracket-preserving bijection."""
        _all_pass(verify_theorem(IsomorphismName.PHI1, S, field3))

    @pytest.mark.slow
    def test_phi1_octonions(self, field3):
        """g(S1, S8) ≅ der H3(Cayley) = f4."""
        _all_pass(verify_theorem(IsomorphismName.PHI1, S8, field3))


class TestPhi2:
    """g(S2, S) ≅ pstr H3(C)."""

    @pytest.mark.parametrize("S,dims", [(S12, (11, 14)), (S4, (35, 0))])
    def test_phi2(self, S, dims, field3):
        """Φ2 is bijective modulo kI and pstr has the dimension of the cell."""
        _all_pass(verify_theorem(IsomorphismName.PHI2, S, field3))
        assert projected_phi2(build_phi2(S, field3)).codomain.graded_dim == dims

    def test_str_of_H3_B12(self, field3):
        """str H3(B(1,2)) = 12|14 and pstr = 11|14."""
        iso = build_phi2(S12, field3)
        pair = iso.parts["pair"]
        assert pair.str_algebra.graded_dim == (12, 14)
        assert pair.pstr.graded_dim == (11, 14)

    @pytest.mark.slow
    @pytest.mark.parametrize("S,dims", [(S42, (35, 20)), (S8, (78, 0))])
    def test_phi2_large(self, S, dims, field3):
        """The larger cases of Φ2."""
        _all_pass(verify_theorem(IsomorphismName.PHI2, S, field3))
        assert projected_phi2(build_phi2(S, field3)).codomain.graded_dim == dims


class TestPhi3:
    """g(Qbar, S) ≅ T(Q, H3(C))."""

    def test_phi3(self, field3):
        """Φ3 for B(1,2) lands on a 24|26 Tits superalgebra and extends Φ."""
        _all_pass(verify_theorem(IsomorphismName.PHI3, S12, field3))
        assert build_phi3(S12, field3).codomain.graded_dim == (24, 26)

    def test_half_scale_fails(self, field3):
        """With the kernel images scaled by one half the map is not a homomorphism."""
        report = build_phi3(S12, field3, kernel_scale=field3.half).verify()
        assert report.status == CheckStatus.FAIL
        assert report.witnesses[0].kind

    @pytest.mark.slow
    @pytest.mark.parametrize("S,dims", [(S42, (66, 32)), (S8, (133, 0))])
    def test_phi3_large(self, S, dims, field3):
        """The larger cases of Φ3."""
        _all_pass(verify_theorem(IsomorphismName.PHI3, S, field3))
        assert build_phi3(S, field3).codomain.graded_dim == dims


class TestPsi:
    """g(S12, S12) ≅ T(Q, K9) and its restriction onto T(Q, K3)."""

    def test_psi(self, field3):
        """Ψ is an isomorphism and the key bracket identity holds on all quadruples."""
        reports = verify_theorem(IsomorphismName.PSI, field=field3)
        _all_pass(reports)
        assert [r.name for r in reports] == ["hom:psi:g(S12,S12)", "psi-key-identity:g(S12,S12)"]
        assert build_psi(field3).codomain.graded_dim == (21, 16)

    def test_psi_restricted(self, field3):
        """The restriction to g(S1, S12) commutes with the embeddings."""
        _all_pass(verify_theorem(IsomorphismName.PSI_RESTRICTED, field=field3))
