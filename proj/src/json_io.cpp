#include "brdg/json_io.hpp"

namespace brdg {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("field \"") + key + "\" has the wrong type");
  }
}

int element(const Json& v, int size, const char* what) {
  if (!v.is_number_integer()) throw FormatError(std::string(what) + ": element index expected");
  const int x = v.get<int>();
  if (x < 0 || x >= size) throw FormatError(std::string(what) + ": element " + std::to_string(x) + " out of range");
  return x;
}

Signature signature_of(const Json& j) {
  const AlgebraClass cls = [&] {
    try {
      return parse_algebra_class(field<std::string>(j, "class"));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }();
  PropertySet props;
  if (j.contains("properties")) {
    std::string csv;
    for (const auto& p : j.at("properties")) {
      if (!csv.empty()) csv += ",";
      csv += p.get<std::string>();
    }
    try {
      props = PropertySet::parse(csv);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  }
  try {
    return Signature::make(cls, props);
  } catch (const SignatureError& e) {
    throw FormatError(e.what());
  }
}

Json signature_json(const Signature& s) {
  Json props = Json::array();
  for (const std::string& p : s.props.names()) props.push_back(p);
  return Json{{"class", std::string(to_string(s.cls))}, {"properties", props}};
}

std::vector<std::array<int, 2>> leq_pairs(int n, auto&& leq) {
  std::vector<std::array<int, 2>> out;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && leq(a, b)) out.push_back({a, b});
  return out;
}

}  // namespace

Json structure_to_json(const PartialStructure& b) {
  Json j = signature_json(b.signature());
  j["carrier"] = b.size();
  j["leq"] = leq_pairs(b.size(), [&](int x, int y) { return b.leq(x, y); });
  Json ops = Json::object();
  for (BinOp o : kBinOps) {
    if (!b.signature().has_op(to_op(o))) continue;
    Json rows = Json::array();
    for (const Entry& e : b.entries(o)) rows.push_back({e.a, e.b, e.c});
    ops[std::string(bin_op_name(o))] = rows;
  }
  if (b.signature().has_op(Op::Diamond)) {
    Json rows = Json::array();
    for (auto [a, c] : b.diamond_entries()) rows.push_back({a, c});
    ops["diamond"] = rows;
  }
  j["ops"] = ops;
  j["zero"] = b.zero;
  j["one"] = b.one;
  if (b.signature().has_unit()) j["e"] = b.unit;
  if (!b.names.empty()) j["names"] = b.names;
  return j;
}

PartialStructure structure_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("structure must be a JSON object");
  const Signature sig = signature_of(j);
  const int n = field<int>(j, "carrier");
  if (n < 1) throw FormatError("carrier must be positive");
  if (n > kMaxCarrier) throw SizeLimitError("carrier larger than 64 elements");
  PartialStructure b(sig, n);
  if (j.contains("leq"))
    for (const auto& p : j.at("leq")) {
      if (!p.is_array() || p.size() != 2) throw FormatError("leq entries are pairs");
      b.set_leq(element(p[0], n, "leq"), element(p[1], n, "leq"));
    }
  if (j.contains("ops")) {
    for (const auto& [name, rows] : j.at("ops").items()) {
      if (name == "diamond") {
        if (!sig.has_op(Op::Diamond)) throw FormatError("diamond is not in the signature of " + std::string(to_string(sig.cls)));
        for (const auto& r : rows) {
          if (!r.is_array() || r.size() != 2) throw FormatError("diamond entries are pairs");
          b.define_diamond(element(r[0], n, "diamond"), element(r[1], n, "diamond"));
        }
        continue;
      }
      std::optional<BinOp> op;
      for (BinOp o : kBinOps)
        if (bin_op_name(o) == name) op = o;
      if (!op) throw FormatError("unknown operation \"" + name + "\"");
      if (!sig.has_op(to_op(*op))) throw FormatError(name + " is not in the signature of " + std::string(to_string(sig.cls)));
      for (const auto& r : rows) {
        if (!r.is_array() || r.size() != 3) throw FormatError(name + " entries are triples");
        const int a = element(r[0], n, name.c_str()), c = element(r[1], n, name.c_str());
        const int v = element(r[2], n, name.c_str());
        const int old = b.op(*op, a, c);
        if (old >= 0 && old != v) throw FormatError(name + " entry (" + std::to_string(a) + "," + std::to_string(c) + ") defined twice");
        b.define(*op, a, c, v);
      }
    }
  }
  b.zero = element(j.contains("zero") ? j.at("zero") : Json(0), n, "zero");
  b.one = element(j.contains("one") ? j.at("one") : Json(n - 1), n, "one");
  if (sig.has_unit()) b.unit = element(j.contains("e") ? j.at("e") : Json(), n, "e");
  else if (j.contains("e")) throw FormatError("\"e\" is only allowed for brdge");
  if (j.contains("names")) {
    b.names = field<std::vector<std::string>>(j, "names");
    if (static_cast<int>(b.names.size()) != n) throw FormatError("names must list one name per element");
  }
  return b;
}

Json algebra_to_json(const FiniteAlgebra& a) {
  return structure_to_json(to_partial(a));
}

FiniteAlgebra algebra_from_json(const Json& j) {
  const PartialStructure b = structure_from_json(j);
  const Signature& sig = b.signature();
  const int n = b.size();
  FiniteAlgebra a;
  a.sig = sig;
  a.size = n;
  a.order.assign(n * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) a.order[x * n + y] = b.leq(x, y);
  auto table = [&](BinOp o) {
    std::vector<int> t(n * n);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        t[x * n + y] = b.op(o, x, y);
        if (t[x * n + y] < 0)
          throw FormatError(std::string(bin_op_name(o)) + " is not total: (" + std::to_string(x) + "," + std::to_string(y) + ") missing");
      }
    return t;
  };
  a.meet = table(BinOp::Meet);
  a.join = table(BinOp::Join);
  if (sig.has_op(Op::Prod)) a.prod = table(BinOp::Prod);
  if (sig.has_residuals()) {
    a.under = table(BinOp::Under);
    a.over = table(BinOp::Over);
  }
  if (sig.has_op(Op::Diamond)) {
    a.diamond.resize(n);
    for (int x = 0; x < n; ++x) {
      a.diamond[x] = b.diamond(x);
      if (a.diamond[x] < 0) throw FormatError("diamond is not total");
    }
  }
  a.zero = b.zero;
  a.one = b.one;
  a.unit = b.unit;
  return a;
}

Json frame_to_json(const Frame& f) {
  Json j;
  j["points"] = f.points;
  j["leq"] = leq_pairs(f.points, [&](int x, int y) { return f.leq(x, y); });
  Json r = Json::array();
  for (int x = 0; x < f.points; ++x)
    for (int y = 0; y < f.points; ++y) {
      if (f.binary) {
        if (f.R(x, y)) r.push_back({x, y});
        continue;
      }
      for (int z = 0; z < f.points; ++z)
        if (f.R(x, y, z)) r.push_back({x, y, z});
    }
  j["R"] = r;
  if (f.unit_set) j["E"] = *f.unit_set;
  return j;
}

Frame frame_from_json(const Json& j, bool binary) {
  const int p = field<int>(j, "points");
  if (p < 1) throw FormatError("points must be positive");
  Frame f = Frame::make(p, binary);
  if (j.contains("leq"))
    for (const auto& q : j.at("leq")) f.order[element(q[0], p, "leq") * p + element(q[1], p, "leq")] = 1;
  if (j.contains("R"))
    for (const auto& r : j.at("R")) {
      if (binary) {
        if (r.size() != 2) throw FormatError("R entries of a diamond frame are pairs");
        f.set_R(element(r[0], p, "R"), element(r[1], p, "R"));
      } else {
        if (r.size() != 3) throw FormatError("R entries are triples");
        f.set_R(element(r[0], p, "R"), element(r[1], p, "R"), element(r[2], p, "R"));
      }
    }
  if (j.contains("E")) {
    std::vector<int> e;
    for (const auto& x : j.at("E")) e.push_back(element(x, p, "E"));
    f.unit_set = e;
  }
  return f;
}

Json certificate_to_json(const PartialStructure& b, const Certificate& c) {
  Json j = signature_json(Signature::make(c.cls, c.props));
  j["degenerate"] = c.degenerate;
  Json fam = Json::array();
  for (Mask f : c.family) {
    Json members = Json::array();
    for (int x = 0; x < b.size(); ++x)
      if (has(f, x)) members.push_back(x);
    fam.push_back(members);
  }
  j["family"] = fam;
  Json acc = Json::array();
  if (!c.degenerate)
    for (const Triple& t : accessibility_table(b, c.family)) acc.push_back({t.a, t.b, t.c});
  j["accessibility"] = acc;
  Json sep = Json::array();
  for (int x = 0; x < b.size(); ++x)
    for (int y = 0; y < b.size(); ++y) {
      if (b.leq(x, y)) continue;
      for (std::size_t i = 0; i < c.family.size(); ++i)
        if (has(c.family[i], x) && !has(c.family[i], y)) {
          sep.push_back({x, y, static_cast<int>(i)});
          break;
        }
    }
  j["separation"] = sep;
  Json wit = Json::array();
  for (const Witness& w : c.witnesses)
    wit.push_back(Json{{"kind", std::string(to_string(w.kind))},
                       {"filter", w.filter},
                       {"entry", w.entry},
                       {"first", w.first},
                       {"second", w.second}});
  j["witnesses"] = wit;
  return j;
}

Json valuation_to_json(const Valuation& v) {
  Json j = Json::object();
  for (const auto& [name, x] : v) j[name] = x;
  return j;
}

}  // namespace brdg
