#include <cmath>
#include <vector>

#include "doctest.h"
#include "hpchain/identities.hpp"

using namespace hpchain;
using namespace hpchain::identities;

TEST_CASE("default manifest passes") {
  const Manifest m = default_manifest();
  CHECK(m.version == kManifestVersion);
  CHECK(m.grid_size() > 0);
  const std::vector<IdentityReport> reports = run_manifest(m);
  REQUIRE(reports.size() == 5);
  for (const IdentityReport& r : reports) {
    INFO(to_string(r.id) << "\n" << format_table(std::vector<IdentityReport>{r}));
    CHECK(r.passed());
    CHECK_FALSE(r.evaluations.empty());
  }
}

TEST_CASE("a perturbed kernel is detected") {
  CheckOptions options;
  options.kernel_perturbation = 1e-6;
  const double grid[] = {1.0, 2.0};
  CHECK_FALSE(check_prop_bessel(6, grid, 2, options).passed());
  CHECK_FALSE(check_det_identity(2, 3, 1.0, options).passed());
  CHECK_FALSE(check_det_identity(3, 2, 1.0, options).passed());
  const double c[] = {1.0, 0.5};
  CHECK_FALSE(check_fermion_equivalence(2, 3, chain::LatticeSize::infinite(), c, options).passed());
  CHECK_FALSE(check_heine_szego(2, grid, options).passed());
}

TEST_CASE("reports") {
  const IdentityReport r = check_det_identity(2, 3, 1.0);
  CHECK(r.passed());
  CHECK(r.failures().empty());
  CHECK(r.max_rel_error() < 1e-9);
  const nlohmann::json j = to_json(r);
  CHECK(j.at("identity") == "DET_ID_K2");
  CHECK(j.at("passed") == true);
  IdentityReport other = check_prop_bessel(2, std::vector<double>{1.0}, 2);
  IdentityReport mine = r;
  CHECK_THROWS_AS(mine.merge(other), std::invalid_argument);
  CHECK(format_table(std::vector<IdentityReport>{r}).find("PASS") != std::string::npos);
}

TEST_CASE("identity names round trip") {
  for (IdentityId id : {IdentityId::kPropBessel, IdentityId::kDetIdK2, IdentityId::kDetIdGeneralK,
                        IdentityId::kFermionEquivalence, IdentityId::kHeineSzego})
    CHECK(identity_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(identity_from_string("NOPE"), std::invalid_argument);
}

TEST_CASE("manifest JSON round trip") {
  const Manifest m = default_manifest();
  const nlohmann::json doc = to_json(m);
  const Manifest back = parse_manifest(doc);
  CHECK(to_json(back) == doc);
  CHECK(back.grid_size() == m.grid_size());
}

TEST_CASE("manifest validation") {
  CHECK_THROWS_AS(parse_manifest(nlohmann::json{{"version", "other/9"}, {"checks", nlohmann::json::array()}}),
                  std::invalid_argument);
  const Manifest empty = parse_manifest(nlohmann::json{{"version", kManifestVersion}, {"checks", nlohmann::json::array()}});
  CHECK(empty.grid_size() == 0);
  CHECK(run_manifest(empty).empty());
  const nlohmann::json bad_l = nlohmann::json::parse(
      R"({"version":"hpchain-identities/1","checks":[{"identity":"FERMION_EQUIVALENCE","cases":[{"K":1,"N":2,"L":"ring","J":[1.0]}]}]})");
  CHECK_THROWS_AS(parse_manifest(bad_l), std::invalid_argument);
}

TEST_CASE("custom manifest") {
  const nlohmann::json doc = nlohmann::json::parse(R"({
    "version": "hpchain-identities/1",
    "checks": [
      {"identity": "PROP_BESSEL", "K": [3], "nu_max": 9, "J": [0.5, 4.0]},
      {"identity": "DET_ID_GENERAL_K", "K": [2, 3], "N": [1, 2, 4], "max_KN": 8, "J": [1.0]},
      {"identity": "FERMION_EQUIVALENCE", "cases": [{"K": 1, "N": 3, "L": 32, "J": [1.0]}]}
    ]})");
  const Manifest m = parse_manifest(doc);
  const std::vector<IdentityReport> reports = run_manifest(m);
  REQUIRE(reports.size() == 3);
  for (const IdentityReport& r : reports) CHECK(r.passed());
  CHECK(reports[1].evaluations.size() == 5);
}

TEST_CASE("eigenvalue integral") {
  const double c[] = {1.0};
  const EigenvalueIntegral one = eigenvalue_integral(1, c);
  CHECK(one.partition.ln_magnitude == doctest::Approx(std::log(std::cyl_bessel_i(0.0, 1.0))).epsilon(1e-13));
  CHECK(one.trace_mean == doctest::Approx(std::cyl_bessel_i(1.0, 1.0) / std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-13));
  const double zero[] = {0.0};
  CHECK(eigenvalue_integral(3, zero).partition.ln_magnitude == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::fabs(eigenvalue_integral(3, zero).trace_mean) < 1e-12);
  CHECK_THROWS_AS(eigenvalue_integral(5, c), std::invalid_argument);
  CHECK_THROWS_AS(eigenvalue_integral(2, c, 3), std::invalid_argument);
}
