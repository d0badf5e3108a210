import pytest

from tdlcrank import groups as g
from tdlcrank.builder import build_and_verify, build_group
from tdlcrank.errors import OrdinalDomainError
from tdlcrank.ordinal import add, normalize, omega_power
from tdlcrank.parsing import parse_group_expr as P
from tdlcrank.parsing import parse_ordinal as O
from tdlcrank.rank import eval_rank


def test_small_targets():
    assert build_group(1) == g.Trivial()
    assert build_group(2) == P("Seed(s)")
    assert build_group(O("w+2")) == P("F(1,s)")


def test_mixed_target():
    # Pow(x, 1) is stored as x itself
    e = build_group(O("w^2*2+w+4"))
    assert e == P("Wr(Pow(F(2,s),2),Wr(F(1,s),Pow(F(0,s),2)))")
    assert eval_rank(e).value == O("w^2*2+w+4")


def test_residual_targets():
    assert build_group(O("w^2+1")) == P("Res(F(2,s))")


def test_ldp_family_target():
    assert build_group(O("w^w+1")) == P("LDPfam(s)")


@pytest.mark.parametrize("a2", range(4))
@pytest.mark.parametrize("a1", range(4))
@pytest.mark.parametrize("f", range(1, 5))
def test_fixpoint_grid(a2, a1, f):
    target = normalize([(2, a2), (1, a1), (0, f)])
    expr, res = build_and_verify(target)
    assert res.exact and res.value == target


def test_higher_powers():
    for n in range(1, 7):
        for f in (1, 2, 3):
            target = add(omega_power(n), f)
            assert eval_rank(build_group(target)).value == target


@pytest.mark.parametrize("bad", ["0", "w", "w^2*3", "w^w", "w^w+2", "w^(w+1)+1"])
def test_rejects_unreachable_targets(bad):
    with pytest.raises(OrdinalDomainError):
        build_group(O(bad))


def test_seed_name():
    assert build_group(O("w+2"), seed="g") == P("F(1,g)")
