#include "amp/rootdata.hpp"

#include "doctest.h"

#include <algorithm>
#include <set>

using namespace amp;

namespace {

Rat rat(Int num, Int den = 1) { return to_rat(num, den); }

bool is_negative_root(const RootDatum& rd, const IntVec& v) {
  IntVec neg = negate(v);
  return std::find(rd.positive_roots.begin(), rd.positive_roots.end(), neg) !=
         rd.positive_roots.end();
}

}  // namespace

TEST_CASE("integer linear algebra primitives") {
  IntMat m = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  SmithForm sf = smith_normal_form(m);
  REQUIRE(sf.diagonal.size() == 3);
  CHECK(sf.diagonal[0] == 2);
  CHECK(sf.diagonal[1] == 6);
  CHECK(sf.diagonal[2] == 12);
  // U m V = diag
  IntMat prod = mat_mul(sf.row_ops, mat_mul(m, sf.col_ops));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(prod[i][j] == (i == j ? sf.diagonal[i].get_si() : 0));

  CHECK(rational_rank(m) == 3);
  CHECK(rational_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(rational_rank({{0, 0}, {0, 0}}) == 0);

  auto ker = integer_kernel({{1, 1, 1}});
  REQUIRE(ker.size() == 2);
  for (const IntVec& v : ker) {
    CHECK(dot(v, {1, 1, 1}) == 0);
    CHECK(primitive_part(v) == v);
  }
  // saturation: (1,-1,0) must be an integer combination of the basis
  CHECK(integer_kernel({{2, 0}, {0, 3}}).empty());
}

TEST_CASE("A1 simply connected") {
  RootDatum rd = build_root_datum("A1");
  CHECK(rd.rank == 1);
  CHECK(rd.is_semisimple());
  REQUIRE(rd.positive_roots.size() == 1);
  CHECK(rd.positive_roots[0] == IntVec{2});
  CHECK(rd.positive_coroots[0] == IntVec{1});
  CHECK(dot(rd.positive_roots[0], rd.positive_coroots[0]) == 2);
  CHECK(rd.rho == RatVec{rat(1)});

  WeylGroup w = weyl_group(rd);
  CHECK(w.order() == 2);
  CHECK(w.long_element().length() == 1);

  // |alpha-vee|* = <rho, alpha-vee> = 1
  CHECK(norm_star(rd, to_rational(IntVec{1})) == rat(1));
  CHECK(norm_star_adjoint(rd, to_rational(IntVec{1})) == rat(1));
}

TEST_CASE("A2 root system and norms") {
  RootDatum rd = build_root_datum("A2");
  CHECK(rd.rank == 2);
  CHECK(rd.cartan == IntMat{{2, -1}, {-1, 2}});
  REQUIRE(rd.positive_roots.size() == 3);
  CHECK(rd.positive_roots[0] == IntVec{2, -1});
  CHECK(rd.positive_roots[1] == IntVec{-1, 2});
  CHECK(rd.positive_roots[2] == IntVec{1, 1});
  CHECK(rd.rho == RatVec{rat(1), rat(1)});

  WeylGroup w = weyl_group(rd);
  REQUIRE(w.order() == 6);
  CHECK(w.identity().length() == 0);
  CHECK(w.long_element().length() == 3);
  CHECK(w.long_element().word == std::vector<int>{0, 1, 0});

  // lengths come out sorted: 0,1,1,2,2,3
  std::vector<int> lengths;
  for (const auto& el : w.elements) lengths.push_back(el.length());
  CHECK(lengths == std::vector<int>{0, 1, 1, 2, 2, 3});

  // first simple coroot: dominant representative is (1,1), giving norm 2
  CHECK(dominant_representative(rd, to_rational(IntVec{1, 0})) == to_rational(IntVec{1, 1}));
  CHECK(norm_star(rd, to_rational(IntVec{1, 0})) == rat(2));
  // rational coweight with <alpha_1, x> = 1, <alpha_2, x> = 0 has norm 1
  RatVec omega1 = {rat(2, 3), rat(1, 3)};
  CHECK(norm_star(rd, omega1) == rat(1));
  CHECK(norm_star_adjoint(rd, omega1) == rat(1));
}

TEST_CASE("Cartan matrices of small types") {
  CHECK(build_root_datum("B2").cartan == IntMat{{2, -2}, {-1, 2}});
  CHECK(build_root_datum("C2").cartan == IntMat{{2, -1}, {-2, 2}});
  CHECK(build_root_datum("G2").cartan == IntMat{{2, -1}, {-3, 2}});
  CHECK(build_root_datum("B3").cartan == IntMat{{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}});
  CHECK(build_root_datum("C3").cartan == IntMat{{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}});
  CHECK(build_root_datum("D4").cartan ==
        IntMat{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
}

TEST_CASE("root system sizes and Weyl orders") {
  struct Row {
    const char* type;
    std::size_t positives;
    std::size_t order;
  };
  for (Row r : {Row{"A3", 6, 24}, Row{"B2", 4, 8}, Row{"B3", 9, 48}, Row{"C3", 9, 48},
                Row{"D3", 6, 24}, Row{"D4", 12, 192}, Row{"G2", 6, 12}}) {
    RootDatum rd = build_root_datum(r.type);
    CHECK(rd.num_positive_roots() == r.positives);
    WeylGroup w = weyl_group(rd);
    CHECK(w.order() == r.order);
    CHECK(w.long_element().length() == static_cast<int>(r.positives));
  }
}

TEST_CASE("GL2 datum") {
  RootDatum rd = build_root_datum("GL2");
  CHECK(rd.rank == 2);
  CHECK(!rd.is_semisimple());
  REQUIRE(rd.positive_roots.size() == 1);
  CHECK(rd.positive_roots[0] == IntVec{1, -1});
  CHECK(rd.positive_coroots[0] == IntVec{1, -1});
  CHECK(rd.rho == RatVec{rat(1, 2), rat(-1, 2)});
  CHECK(weyl_group(rd).order() == 2);

  CHECK(norm_star(rd, to_rational(IntVec{1, 0})) == rat(1, 2));
  CHECK(norm_star(rd, to_rational(IntVec{1, 1})) == rat(0));  // central
  CHECK(norm_star(rd, to_rational(IntVec{3, 1})) == rat(1));
  CHECK(norm_star_adjoint(rd, to_rational(IntVec{3, 1})) == rat(1));
}

TEST_CASE("products concatenate lattices") {
  RootDatum rd = build_root_datum("A1xA1");
  CHECK(rd.rank == 2);
  CHECK(rd.num_positive_roots() == 2);
  CHECK(weyl_group(rd).order() == 4);
  CHECK(weyl_group(rd).long_element().length() == 2);

  RootDatum mixed = build_root_datum("A2xGL2");
  CHECK(mixed.rank == 4);
  CHECK(mixed.semisimple_rank() == 3);
  CHECK(mixed.num_positive_roots() == 4);
  CHECK(weyl_group(mixed).order() == 12);

  // norms add across factors
  RatVec mu = to_rational(IntVec{1, 0, 1, 0});
  RootDatum a2 = build_root_datum("A2");
  RootDatum gl2 = build_root_datum("GL2");
  CHECK(norm_star(mixed, mu) ==
        norm_star(a2, to_rational(IntVec{1, 0})) + norm_star(gl2, to_rational(IntVec{1, 0})));
}

TEST_CASE("torus datum has trivial Weyl group") {
  RootDatum rd = build_root_datum("GL1");
  CHECK(rd.rank == 1);
  CHECK(rd.num_positive_roots() == 0);
  WeylGroup w = weyl_group(rd);
  CHECK(w.order() == 1);
  CHECK(w.long_element().length() == 0);
  CHECK(norm_star(rd, to_rational(IntVec{5})) == rat(0));
}

TEST_CASE("longest element negates the positive roots") {
  for (const char* type : {"A2", "B2", "G2", "A3"}) {
    RootDatum rd = build_root_datum(type);
    WeylGroup w = weyl_group(rd);
    const WeylElement& w0 = w.long_element();
    for (const IntVec& beta : rd.positive_roots) {
      IntVec image = mat_apply(w0.on_weights, beta);
      CHECK(is_negative_root(rd, image));
    }
  }
}

TEST_CASE("Weyl action preserves the pairing and the star norm") {
  RootDatum rd = build_root_datum("B2");
  WeylGroup w = weyl_group(rd);
  IntVec mu = {2, -1};
  IntVec x = {1, 3};
  for (const auto& el : w.elements) {
    // <w^{-1} x, y> = <x, w y>
    CHECK(dot(apply_inverse_to_weight(el, x), mu) == dot(x, apply_to_coweight(el, mu)));
    CHECK(norm_star(rd, to_rational(apply_to_coweight(el, mu))) ==
          norm_star(rd, to_rational(mu)));
  }
}

TEST_CASE("star norm is a norm on the semisimple part") {
  for (const char* type : {"A2", "B2", "GL3"}) {
    RootDatum rd = build_root_datum(type);
    std::vector<IntVec> sample = coweights_up_to_height(rd, 2, false);
    for (const IntVec& a : sample) {
      RatVec ra = to_rational(a);
      CHECK(norm_star(rd, ra) >= 0);
      RatVec nra = to_rational(negate(a));
      CHECK(norm_star(rd, ra) == norm_star(rd, nra));
      CHECK(norm_star(rd, ra) == norm_star_adjoint(rd, ra));
    }
    // subadditive on a few pairs
    for (std::size_t k = 0; k + 7 < sample.size(); k += 7) {
      RatVec sum = to_rational(add(sample[k], sample[k + 3]));
      CHECK(norm_star(rd, sum) <=
            norm_star(rd, to_rational(sample[k])) + norm_star(rd, to_rational(sample[k + 3])));
    }
  }
}

TEST_CASE("dominance machinery") {
  RootDatum rd = build_root_datum("A2");
  CHECK(is_dominant_coweight(rd, to_rational(IntVec{1, 1})));
  CHECK(!is_dominant_coweight(rd, to_rational(IntVec{1, -2})));
  RatVec dom = dominant_representative(rd, to_rational(IntVec{-1, -1}));
  CHECK(is_dominant_coweight(rd, dom));
  // dominant representative of a dominant vector is itself
  CHECK(dominant_representative(rd, to_rational(IntVec{2, 3})) == to_rational(IntVec{2, 3}));
}

TEST_CASE("coweight enumeration is deterministic and complete") {
  RootDatum rd = build_root_datum("A1");
  std::vector<IntVec> all = coweights_up_to_height(rd, 2, false);
  CHECK(all.size() == 5);  // -2..2 in Z^1
  CHECK(all[0] == IntVec{0});
  std::vector<IntVec> dom = coweights_up_to_height(rd, 2, true);
  CHECK(dom == std::vector<IntVec>{{0}, {1}, {2}});

  RootDatum a2 = build_root_datum("A2");
  std::set<IntVec> uniq;
  for (const IntVec& v : coweights_up_to_height(a2, 3, false)) {
    CHECK(height(v) <= 3);
    uniq.insert(v);
  }
  CHECK(uniq.size() == 25);  // |{(x,y) : |x|+|y| <= 3}|
}

TEST_CASE("JSON round trip") {
  RootDatum rd = build_root_datum("B2");
  std::string text = root_datum_to_json(rd);
  RootDatum back = root_datum_from_json(text);
  CHECK(back.name == rd.name);
  CHECK(back.rank == rd.rank);
  CHECK(back.simple_roots == rd.simple_roots);
  CHECK(back.simple_coroots == rd.simple_coroots);
  CHECK(back.positive_roots == rd.positive_roots);
  CHECK(back.cartan == rd.cartan);
  // serialization is deterministic
  CHECK(root_datum_to_json(back) == text);

  CHECK_THROWS_AS(root_datum_from_json("{not json"), invalid_input);
  CHECK_THROWS_AS(root_datum_from_json("{\"schema_version\": 99}"), invalid_input);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(build_root_datum("A0"), invalid_input);
  CHECK_THROWS_AS(build_root_datum("Z3"), invalid_input);
  CHECK_THROWS_AS(build_root_datum("D2"), invalid_input);
  CHECK_THROWS_AS(build_root_datum("G3"), invalid_input);
  CHECK_THROWS_AS(build_root_datum(""), invalid_input);
  CHECK_THROWS_AS(build_root_datum("A1x"), invalid_input);

  // <alpha, alpha-vee> must equal 2
  CHECK_THROWS_AS(build_root_datum("bad", 1, {{1}}, {{1}}), invalid_input);
  // dimension mismatch
  CHECK_THROWS_AS(build_root_datum("bad", 2, {{2}}, {{1}}), invalid_input);
  // linearly dependent simple roots
  CHECK_THROWS_AS(build_root_datum("bad", 2, {{2, 0}, {4, 0}}, {{1, 0}, {2, 0}}),
                  invalid_input);
  // affine Cartan matrix: the closure never terminates, the cap fires
  CHECK_THROWS_AS(build_root_datum("affine", 3, {{2, -2, 0}, {-2, 2, 1}}, {{1, 0, 0}, {0, 1, 0}}),
                  invalid_input);
  // Weyl cap
  CHECK_THROWS_AS(weyl_group(build_root_datum("A2"), 3), invalid_input);
}

TEST_CASE("element words multiply to the stored matrices") {
  RootDatum rd = build_root_datum("G2");
  WeylGroup w = weyl_group(rd);
  for (const auto& el : w.elements) {
    IntVec mu = {1, 2};
    IntVec via_word = mu;
    // apply s_{i_k} first: word [i_1..i_k] acts as s_{i_1} ... s_{i_k}
    for (auto it = el.word.rbegin(); it != el.word.rend(); ++it)
      via_word = reflect_coweight(rd, *it, via_word);
    CHECK(via_word == apply_to_coweight(el, mu));
  }
}
