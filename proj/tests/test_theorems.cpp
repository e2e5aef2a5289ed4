#include "salv/theorems.hpp"

#include <string>
#include <vector>

#include "doctest.h"
#include "salv/coxeter.hpp"
#include "salv/errors.hpp"

using namespace salv;

namespace {

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

int count_of(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t p = hay.find(needle); p != std::string::npos;
       p = hay.find(needle, p + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("betti vectors match hand values and the product formula") {
  CoxeterSystem a1(Family::A, 1);
  CHECK(betti(a1).b == std::vector<long>{1, 1});
  CoxeterSystem a2(Family::A, 2);
  CHECK(betti(a2).b == std::vector<long>{1, 3, 2});
  CoxeterSystem b3(Family::B, 3);
  CHECK(betti(b3).b == std::vector<long>{1, 9, 23, 15});
  CHECK(betti(b3, 1).b == std::vector<long>{1, 9});

  for (int n = 1; n <= 4; ++n) {
    CoxeterSystem sys(Family::A, n);
    CHECK(betti(sys).b == betti_product_formula(Family::A, n));
  }
  for (int n = 1; n <= 3; ++n) {
    CoxeterSystem sys(Family::B, n);
    CHECK(betti(sys).b == betti_product_formula(Family::B, n));
  }
  for (int n = 2; n <= 3; ++n) {
    CoxeterSystem sys(Family::D, n);
    CHECK(betti(sys).b == betti_product_formula(Family::D, n));
  }
}

TEST_CASE("product formula expands the right polynomials") {
  // (1+t)(1+2t)(1+3t) and (1+t)(1+3t)(1+5t)
  CHECK(betti_product_formula(Family::A, 3) ==
        std::vector<long>{1, 6, 11, 6});
  CHECK(betti_product_formula(Family::B, 3) ==
        std::vector<long>{1, 9, 23, 15});
  // D4: (1+t)(1+3t)(1+5t)(1+3t)
  CHECK(betti_product_formula(Family::D, 4) ==
        std::vector<long>{1, 12, 50, 84, 45});
}

TEST_CASE("stability passes in range and only reports outside it") {
  CheckResult in = check_stability(Family::A, 1, 4);
  CHECK(in.verdict == Verdict::Pass);
  CHECK(contains(in.witness, "{phi1}"));

  CHECK(check_stability(Family::B, 1, 3).verdict == Verdict::Pass);

  // n = 2 < 3k+1: whatever the value, the verdict must not judge it.
  CheckResult out = check_stability(Family::A, 1, 2);
  CHECK(out.verdict == Verdict::Info);
  CHECK(contains(out.witness, "outside range"));
}

TEST_CASE("rank formula ties the multiplicity to the alternating sum") {
  CoxeterSystem a4(Family::A, 4);
  CheckResult r = check_rank_formula(a4, 1);
  CHECK(r.verdict == Verdict::Pass);
  // b1 - b0 = 10 - 1
  CHECK(contains(r.witness, "alpha_1,1 = 9"));

  CoxeterSystem b3(Family::B, 3);
  CheckResult rb = check_rank_formula(b3, 1);
  CHECK(rb.verdict == Verdict::Pass);
  CHECK(contains(rb.witness, "alpha_1,1 = 8"));

  CoxeterSystem a2(Family::A, 2);
  CHECK_THROWS_AS(check_rank_formula(a2, 1), RangeViolationError);
}

TEST_CASE("low parabolic pieces decompose as index many copies") {
  CoxeterSystem a3(Family::A, 3);
  CheckResult r = check_direct_sum(a3, 2);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(contains(r.witness, "4 copies of A n=2"));

  CoxeterSystem b3(Family::B, 3);
  CHECK(check_direct_sum(b3, 1).verdict == Verdict::Pass);
  CHECK(contains(check_direct_sum(b3, 1).witness, "24 copies of B n=1"));
  CHECK(check_direct_sum(b3, 2).verdict == Verdict::Pass);

  // k = n is the whole complex, one copy of itself.
  CheckResult whole = check_direct_sum(b3, 3);
  CHECK(whole.verdict == Verdict::Pass);
  CHECK(contains(whole.witness, "1 copies"));

  // k = 0 is the vertex set.
  CheckResult verts = check_direct_sum(a3, 0);
  CHECK(verts.verdict == Verdict::Pass);
  CHECK(contains(verts.witness, "24 copies of a point"));
}

TEST_CASE("filtration stage triviality follows from the prefix hypotheses") {
  CheckResult b = check_filtration_triviality(Family::B, 3, 1, 1);
  CHECK(b.verdict == Verdict::Pass);
  CHECK(contains(b.witness, "hold"));
  CHECK(contains(b.witness, "conclusion holds"));

  CheckResult a = check_filtration_triviality(Family::A, 3, 1, 1);
  CHECK(a.verdict == Verdict::Pass);

  // k > q stages have no degree-q cells at all.
  CheckResult vac = check_filtration_triviality(Family::A, 3, 2, 1);
  CHECK(vac.verdict == Verdict::Pass);
  CHECK(contains(vac.witness, "vacuous"));
}

TEST_CASE("block ranks add generically but not over the residue fields") {
  CheckResult r = check_block_rank(1);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(contains(r.witness, "certified"));

  // Off-diagonal blocks contribute rank exactly at the torsion indices.
  CHECK(contains(r.witness, "h2:221!=205"));
  CHECK(contains(r.witness, "h3:314!=274"));
  CHECK(contains(r.witness, "h3:358!=350"));
  std::string generic = r.witness.substr(0, r.witness.find("; d="));
  CHECK(count_of(generic, "!=") == 0);
  CHECK(count_of(r.witness, "!=") == 3);

  CHECK(check_block_rank(0).verdict == Verdict::Skipped);
}

TEST_CASE("reflection counts of consecutive comparison pairs are coprime") {
  CheckResult a = check_coprimality(Family::A, 1);
  CHECK(a.verdict == Verdict::Pass);
  CHECK(contains(a.witness, "gcd(10,3) = 1"));

  CheckResult b = check_coprimality(Family::B, 4);
  CHECK(b.verdict == Verdict::Pass);
  CHECK(contains(b.witness, "gcd(16,9) = 1"));

  CHECK(check_coprimality(Family::A, 0).verdict == Verdict::Skipped);
  CHECK(check_coprimality(Family::D, 4).verdict == Verdict::Skipped);
}

TEST_CASE("degree-1 torsion is annihilated by tau^3 - 1 in small type A") {
  CheckResult r2 = check_annihilator(Family::A, 2, 1, 3);
  CHECK(r2.verdict == Verdict::Pass);
  CheckResult r3 = check_annihilator(Family::A, 3, 1, 3);
  CHECK(r3.verdict == Verdict::Pass);
  CHECK(contains(r3.witness, "invariant factors divide tau^3-1"));
}

TEST_CASE("low parabolic boundaries of D match the A chain blockwise") {
  CheckResult r = check_dn_reduction(3);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(contains(r.witness, "columns compared"));
}

TEST_CASE("run_checks keeps a deterministic order and contains throws") {
  std::vector<CheckJob> jobs;
  jobs.push_back([] {
    CheckResult r;
    r.name = "zeta";
    r.verdict = Verdict::Pass;
    return r;
  });
  jobs.push_back([]() -> CheckResult { throw UsageError("boom"); });
  jobs.push_back([] {
    CheckResult r;
    r.name = "alpha";
    r.verdict = Verdict::Pass;
    return r;
  });
  std::vector<CheckResult> out = run_checks(jobs);
  REQUIRE(out.size() == 3);
  CHECK(out[0].name == "alpha");
  CHECK(out[1].name == "job");
  CHECK(out[1].verdict == Verdict::Fail);
  CHECK(contains(out[1].witness, "error: boom"));
  CHECK(out[2].name == "zeta");
  CHECK(out[0].ok());
  CHECK(!out[1].ok());
}

TEST_CASE("verdicts render and gate ok()") {
  CHECK(to_string(Verdict::Pass) == "pass");
  CHECK(to_string(Verdict::Fail) == "fail");
  CHECK(to_string(Verdict::Info) == "info");
  CHECK(to_string(Verdict::Skipped) == "skipped");
  CheckResult r;
  r.verdict = Verdict::Info;
  CHECK(r.ok());
  r.verdict = Verdict::Skipped;
  CHECK(r.ok());
}

TEST_CASE("the acceptance plan has nine blocks and an extended tail") {
  std::vector<CriterionBlock> desk = acceptance_plan(false);
  REQUIRE(desk.size() == 9);
  for (int i = 0; i < 9; ++i) {
    CHECK(desk[i].number == i + 1);
    CHECK(!desk[i].title.empty());
    CHECK(!desk[i].jobs.empty());
  }
  std::vector<CriterionBlock> ext = acceptance_plan(true);
  CHECK(ext[8].jobs.size() == desk[8].jobs.size() + 1);
}
