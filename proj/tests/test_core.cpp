#include <gtest/gtest.h>

#include "intercon/core.hpp"
#include "intercon/eval.hpp"
#include "intercon/formula.hpp"
#include "intercon/interpretation.hpp"
#include "intercon/netdsl.hpp"
#include "intercon/simple.hpp"
#include "support/gen.hpp"

using namespace intercon;

namespace {

const Var a = Var::sync("a");
const Var b = Var::sync("b");
const Var ad = Var::dataflow("a");
const GroundTerm d1("d1");

Formula parse(const char* src) {
  ParseContext ctx;
  ctx.check_polarity = false;
  return parse_formula(src, ctx);
}

}  // namespace

TEST(Compatible, DisjointDomains) { EXPECT_TRUE(compatible({{a, true}}, {{b, false}})); }

TEST(Compatible, AgreementOnOverlap) { EXPECT_TRUE(compatible({{a, true}}, {{a, true}, {ad, d1}})); }

TEST(Compatible, Conflict) { EXPECT_FALSE(compatible({{a, true}}, {{a, false}})); }

TEST(Unite, Identity) { EXPECT_EQ(unite({{a, true}}, {}), (Assignment{{a, true}})); }

TEST(Unite, DisjointBindings) {
  EXPECT_EQ(unite({{a, true}}, {{ad, d1}}), (Assignment{{a, true}, {ad, d1}}));
}

TEST(Unite, ConflictIsALogicError) {
  EXPECT_THROW(unite({{a, true}}, {{a, false}}), PreconditionError);
  EXPECT_FALSE(try_unite({{a, true}}, {{a, false}}));
}

TEST(Unite, TopAndBottomOfTheMergeExample) {
  GroundTerm v("v");
  Assignment top{{Var::sync("a"), true}, {Var::sync("b"), true}, {Var::sync("d"), false},
                 {Var::sync("e"), true}, {Var::dataflow("a"), v}, {Var::dataflow("b"), v},
                 {Var::dataflow("e"), v}};
  Assignment bottom{{Var::sync("c"), false}, {Var::sync("d"), false}};
  Assignment joint = unite(top, bottom);
  EXPECT_EQ(joint.size(), 8u);
  EXPECT_TRUE(top.subset_of(joint));
  EXPECT_TRUE(bottom.subset_of(joint));
}

TEST(FreeVars, TrueHasNone) { EXPECT_TRUE(free_vars(fm::truth()).empty()); }

TEST(FreeVars, ExternalPredicateArguments) {
  EXPECT_EQ(free_vars(parse("c -> @UserAppr(^c)")),
            (std::set<Var>{Var::sync("c"), Var::dataflow("c")}));
}

TEST(FreeVars, Lossy) {
  EXPECT_EQ(free_vars(parse("(b -> a) & (b -> ^a = ^b)")),
            (std::set<Var>{a, ad, b, Var::dataflow("b")}));
}

TEST(FreeVars, ExternalConstraintArguments) {
  std::map<std::string, Signature> ext{{"more", {Signature::Kind::constr, 1, 1}}};
  ParseContext ctx;
  ctx.externals = &ext;
  EXPECT_EQ(free_vars(parse_formula("@more(b, ^a)", ctx)), (std::set<Var>{ad, b}));
}

TEST(EvalTerm, Variable) {
  Interpretation i;
  EXPECT_EQ(eval_term({{ad, d1}}, i, term::dataflow("a")), d1);
}

TEST(EvalTerm, UndefinedArgument) {
  Interpretation i;
  EXPECT_FALSE(eval_term({}, i, term::apply("pair", {term::dataflow("a")})));
}

TEST(EvalTerm, NoflowPropagatesClassically) {
  Interpretation i;
  auto v = eval_term({{ad, GroundTerm::noflow()}}, i, term::apply("pair", {term::dataflow("a")}),
                     Mode::classical);
  ASSERT_TRUE(v);
  EXPECT_TRUE(v->is_noflow());
}

TEST(EvalTerm, ConstructorApplication) {
  Interpretation i;
  EXPECT_EQ(eval_term({{ad, d1}}, i, term::apply("full", {term::dataflow("a")})),
            GroundTerm("full(d1)"));
}

TEST(Universe, NoflowOnlyInClassicalMode) {
  Universe u({GroundTerm("d1"), GroundTerm("d2")});
  EXPECT_FALSE(u.contains(GroundTerm::noflow()));
  EXPECT_EQ(u.values(ad).size(), 2u);
  EXPECT_EQ(u.classical().values(ad).size(), 3u);
  EXPECT_EQ(u.classical().partial().values(ad).size(), 2u);
}

TEST(Universe, RejectsNoflowAndDuplicates) {
  EXPECT_THROW(Universe({GroundTerm::noflow()}), Error);
  EXPECT_THROW(Universe({d1, d1}), Error);
  EXPECT_THROW(Universe(std::vector<GroundTerm>{}), Error);
}

TEST(Interpretation, EqualityIsTheDiagonal) {
  Interpretation i;
  EXPECT_EQ(i.internal(kEquality, {d1, d1}), std::optional<bool>(true));
  EXPECT_EQ(i.internal(kEquality, {d1, GroundTerm("d2")}), std::optional<bool>(false));
}

TEST(Interpretation, ExternalEntriesAreForgottenOnReset) {
  Interpretation i;
  i.set_external_predicate("ok", {d1}, true);
  EXPECT_FALSE(i.external_empty());
  i.reset_external();
  EXPECT_TRUE(i.external_empty());
  EXPECT_THROW(i.external_predicate("ok", {d1}), ResolutionNeeded);
  EXPECT_EQ(i.external_predicate("ok", {d1}, Lookup::cached_only), std::nullopt);
}

// Properties over random instances.

TEST(CoreProperties, CompatibleIsSymmetricAndUnionCommutes) {
  gen::Gen g(11);
  Universe u = gen::Gen::universe(2);
  std::set<Var> vars{a, ad, b, Var::dataflow("b")};
  for (int n = 0; n < 2000; ++n) {
    Assignment x = g.partial(vars, u), y = g.partial(vars, u), z = g.partial(vars, u);
    ASSERT_EQ(compatible(x, y), compatible(y, x));
    if (!compatible(x, y)) continue;
    ASSERT_EQ(unite(x, y), unite(y, x));
    if (compatible(x, z) && compatible(y, z))
      ASSERT_EQ(unite(unite(x, y), z), unite(x, unite(y, z)));
  }
}

TEST(CoreProperties, EvalTermIsMonotone) {
  gen::Gen g(12);
  Universe u = gen::Gen::universe(3);
  Interpretation i;
  std::set<Var> vars{ad, Var::dataflow("b")};
  gen::FormulaShape shape;
  for (int n = 0; n < 2000; ++n) {
    Term t = g.coin() ? term::apply("f", {g.term(shape, u), g.term(shape, u)}) : g.term(shape, u);
    Assignment s = g.partial(vars, u);
    Assignment s2 = g.extend(s, vars, u);
    auto v = eval_term(s, i, t);
    if (v) ASSERT_EQ(eval_term(s2, i, t), v) << to_string(t);
  }
}

TEST(CoreProperties, RewritesKeepFreeVariables) {
  gen::Gen g(13);
  Universe u = gen::Gen::universe(2);
  gen::FormulaShape shape;
  shape.ports = {"a", "b", "c"};
  for (int n = 0; n < 1000; ++n) {
    Formula f = g.formula(shape, u);
    ASSERT_EQ(free_vars(to_simple(f)), free_vars(f));
    ASSERT_EQ(free_vars(to_partial(f)), free_vars(f));
  }
}
