#include <stdexcept>

#include "doctest.h"
#include "msharp/serialize.hpp"

using namespace msharp;
using Json = nlohmann::ordered_json;

TEST_CASE("certificate round trip") {
  const CertifyResult r = certify_sign(0.2, 1.0, 0.01, 0.99, Sign::Positive, 40);
  REQUIRE(certified(r));
  const Certificate& c = std::get<Certificate>(r);
  const Json j = Json::parse(Json(c).dump());
  const Certificate back = certificate_from_json(j);
  CHECK(back.u == c.u);
  CHECK(back.x_lo == c.x_lo);
  CHECK(back.x_hi == c.x_hi);
  CHECK(back.sign == c.sign);
  REQUIRE(back.cells.size() == c.cells.size());
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    CHECK(back.cells[i].lo == c.cells[i].lo);
    CHECK(back.cells[i].hi == c.cells[i].hi);
    CHECK(back.cells[i].bound == c.cells[i].bound);
  }
  CHECK(replay(back));
  CHECK(certify_result_json(r).at("status") == "certified");
}

TEST_CASE("tampered certificate fails replay") {
  const CertifyResult r = certify_sign(0.2, 1.0, 0.01, 0.99, Sign::Positive, 40);
  REQUIRE(certified(r));
  Json j = Json(std::get<Certificate>(r));
  j["u"] = 0.12;  // middle regime: the recorded cells no longer certify
  CHECK_FALSE(replay(certificate_from_json(j)));
  Json gap = Json(std::get<Certificate>(r));
  gap["cells"].erase(gap["cells"].begin() + 1);
  CHECK_FALSE(replay(certificate_from_json(gap)));
}

TEST_CASE("malformed certificate") {
  CHECK_THROWS_AS(certificate_from_json(Json::object()), std::invalid_argument);
  Json j = Json(std::get<Certificate>(certify_sign(0.2, 1.0, 0.1, 0.2, Sign::Positive, 20)));
  j["sign"] = "zero";
  CHECK_THROWS_AS(certificate_from_json(j), std::invalid_argument);
}

TEST_CASE("documents carry schema and manifest") {
  RunManifest m;
  m.command = "verify";
  m.params = {{"p", 1.0}};
  m.seed = 7;
  const Json doc = make_document(m, Json{{"result", 1}});
  auto it = doc.begin();
  CHECK(it.key() == "schema");
  CHECK(doc.at("schema") == kSchema);
  CHECK(doc.at("manifest").at("command") == "verify");
  CHECK(doc.at("manifest").at("seed") == 7);
  CHECK(doc.at("manifest").at("version") == library_version());
  CHECK(doc.at("result") == 1);
}

TEST_CASE("reports serialise") {
  const auto c = falsify_lower(1.0, 0.69);
  REQUIRE(c.has_value());
  const Json j = *c;
  CHECK(j.at("side") == "lower");
  CHECK(j.at("x").get<double>() == c->x);
  const Json u = certify_result_json(certify_sign(0.12, 1.0, 0.01, 0.999, Sign::Positive, 10));
  CHECK(u.at("status") == "unknown");
}
