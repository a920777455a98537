#include "msharp/serialize.hpp"

#include <stdexcept>
#include <string>

namespace msharp {

using Json = nlohmann::ordered_json;

namespace {

Sign parse_sign(const std::string& s) {
  if (s == "positive") return Sign::Positive;
  if (s == "negative") return Sign::Negative;
  throw std::invalid_argument("certificate: bad sign " + s);
}

Certificate::Kind parse_kind(const std::string& s) {
  for (auto k : {Certificate::Kind::Region, Certificate::Kind::EndpointZero, Certificate::Kind::Tail})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("certificate: bad kind " + s);
}

}  // namespace

const char* library_version() { return MSHARP_VERSION; }

void to_json(Json& j, const RunManifest& m) {
  j = Json{{"command", m.command}, {"params", m.params}};
  j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
  j["version"] = library_version();
  j["outputs"] = m.outputs;
}

void to_json(Json& j, const Interval& v) { j = Json::array({v.lo(), v.hi()}); }

void to_json(Json& j, const CounterexampleReport& r) {
  j = Json{{"side", to_string(r.side)},
           {"target", std::string(to_string(r.target))},
           {"x", r.x},
           {"p", r.p},
           {"t", r.t},
           {"lhs", r.lhs},
           {"rhs", r.rhs},
           {"margin", r.margin},
           {"log_ratio", r.log_ratio},
           {"log_ratio_scaled", r.log_ratio_scaled}};
}

void to_json(Json& j, const InequalityCheck& c) {
  j = Json{{"property", "double_inequality"},
           {"pass", c.pass},
           {"target", std::string(to_string(c.target))},
           {"p", c.p},
           {"t_lower", c.t_lower},
           {"t_upper", c.t_upper},
           {"samples", c.samples},
           {"worst_lower_scaled", c.worst_lower},
           {"worst_upper_scaled", c.worst_upper},
           {"violations", c.violations}};
  j["counterexample"] = c.counterexample ? Json(*c.counterexample) : Json(nullptr);
}

void to_json(Json& j, const PropertyResult& r) {
  j = Json{{"property", r.name},
           {"pass", r.pass},
           {"worst_margin", r.worst_margin},
           {"worst_at", r.worst_at},
           {"checks", r.checks}};
}

void to_json(Json& j, const LemmaReport& r) { j = Json{{"pass", r.pass()}, {"properties", r.properties}}; }

void to_json(Json& j, const SeiffertProbe& p) {
  j = Json{{"probe", p.name},
           {"side", to_string(p.side)},
           {"family", std::string(to_string(p.family))},
           {"t", p.t},
           {"forbidden", p.forbidden},
           {"expected_violation", p.expected_violation},
           {"pass", p.pass}};
  j["counterexample"] = p.counterexample ? Json(*p.counterexample) : Json(nullptr);
}

void to_json(Json& j, const SeiffertReport& r) {
  j = Json{{"pass", r.pass()},
           {"s_family", r.s_family},
           {"c_family", r.c_family},
           {"probes_passed", r.probes_passed()},
           {"probes", r.probes}};
}

void to_json(Json& j, const CertificateCell& c) { j = Json::array({c.lo, c.hi, c.depth, c.bound}); }

void to_json(Json& j, const Certificate& c) {
  j = Json{{"kind", to_string(c.kind)},
           {"u", c.u},
           {"p", c.p},
           {"x_lo", c.x_lo},
           {"x_hi", c.x_hi},
           {"sign", to_string(c.sign)},
           {"subintervals", c.subintervals},
           {"max_depth", c.max_depth},
           {"min_bound", c.min_bound},
           {"cells", c.cells}};
}

void to_json(Json& j, const Unknown& u) {
  j = Json{{"status", "unknown"},
           {"reason", u.reason},
           {"x_lo", u.x_lo},
           {"x_hi", u.x_hi},
           {"refuted", u.refuted},
           {"nodes", u.nodes}};
}

Json certify_result_json(const CertifyResult& r) {
  if (const auto* c = std::get_if<Certificate>(&r)) {
    Json j = Json{{"status", "certified"}};
    j.update(Json(*c));
    return j;
  }
  return Json(std::get<Unknown>(r));
}

void to_json(Json& j, const NamedResult& r) {
  j = Json{{"name", r.name}};
  j.update(certify_result_json(r.result));
}

void to_json(Json& j, const LimitCheck& l) {
  j = Json{{"u", l.u}, {"expected", to_string(l.expected)}, {"h_p", l.value}, {"holds", l.holds}};
}

void to_json(Json& j, const TheoremCertification& t) {
  j = Json{{"complete", t.complete()},
           {"p", t.p},
           {"delta", t.delta},
           {"u_negative", t.u_negative},
           {"u_positive", t.u_positive},
           {"epsilon", t.epsilon},
           {"x_right", t.x_right},
           {"certificate_count", t.certificate_count()},
           {"certificates", t.certificates},
           {"tails", t.tails},
           {"limits", t.limits}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    c.kind = parse_kind(j.at("kind").get<std::string>());
    c.u = j.at("u").get<double>();
    c.p = j.at("p").get<double>();
    c.x_lo = j.at("x_lo").get<double>();
    c.x_hi = j.at("x_hi").get<double>();
    c.sign = parse_sign(j.at("sign").get<std::string>());
    c.subintervals = j.at("subintervals").get<std::size_t>();
    c.max_depth = j.at("max_depth").get<int>();
    c.min_bound = j.at("min_bound").get<double>();
    for (const Json& cell : j.at("cells"))
      c.cells.push_back({cell.at(0).get<double>(), cell.at(1).get<double>(), cell.at(2).get<int>(),
                         cell.at(3).get<double>()});
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate: ") + e.what());
  }
}

Json make_document(const RunManifest& m, const Json& body) {
  Json doc{{"schema", kSchema}, {"manifest", m}};
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  return doc;
}

}  // namespace msharp
