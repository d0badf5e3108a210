from tdlcrank import groups as g
from tdlcrank.parsing import parse_group_expr as P

s = g.SeedAtom("s")


def test_ex_seed_attributes():
    a = g.infer_attributes(g.EX(s))
    assert a.compactly_generated and a.monolithic and a.nontrivial


def test_trivial_attributes():
    assert g.infer_attributes(g.Trivial()) == g.NONE
    assert not any(g.NONE.as_dict().values())


def test_wreath_of_tree_groups():
    a = g.infer_attributes(P("Wr(F(1,s),F(1,s))"))
    assert a.dense_U and a.compactly_generated and a.has_witnessing_chain


def test_seed_and_fn_are_seed_grade():
    assert g.is_seed_grade(s)
    assert g.is_seed_grade(g.Fn(3, s))
    assert not g.is_seed_grade(g.EX(s))


def test_well_formed_messages():
    assert g.well_formed(P("EX(Trivial)"))[0] == "EX requires nontrivial transitive child"
    assert g.well_formed(P("EX(Seed(g))")) == []
    assert g.well_formed(P("Res(LDPfam(s))")) == ["Res requires compactly generated child"]
    assert "Wr requires K with a transitive permutation action" in g.well_formed(
        P("Wr(Seed(s),Profinite(p))"))
    assert g.well_formed(g.Pow(s, -1)) == ["Pow requires a nonnegative exponent"]
    assert g.well_formed(g.LDP(s, 0)) == ["LDP requires multiplicity at least 1"]
    assert g.well_formed(g.CocompactExt(g.Trivial())) == ["CoExt requires nontrivial normal subgroup"]


def test_violations_reported_children_first():
    out = g.well_formed(g.Res(g.LDP(g.EX(g.Trivial()), None)))
    assert out[0].startswith("EX requires")
    assert out[-1] == "Res requires compactly generated child"


def test_pow_helpers():
    assert g.make_pow(s, 0) == g.Trivial()
    assert g.make_pow(s, 1) == s
    assert g.unfold_pow(g.Pow(s, 3)) == g.Wr(s, g.Pow(s, 2))
    assert g.size(P("Wr(Seed(s),Seed(s))")) == 3
    assert g.expr_depth(P("Wr(Seed(s),EX(Seed(s)))")) == 3


def test_ldp_compact_generation_depends_on_multiplicity():
    assert g.infer_attributes(g.LDP(s, 3)).compactly_generated
    assert not g.infer_attributes(g.LDP(s, None)).compactly_generated
    assert not g.infer_attributes(g.LDPFamily(s)).compactly_generated


def test_deep_expression_well_formed():
    e = s
    for _ in range(190):  # parser nesting limit is 200
        e = g.Prod((e,))
    assert g.well_formed(e) == []
