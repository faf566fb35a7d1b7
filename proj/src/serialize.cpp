#include "mixtilt/serialize.hpp"

#include <algorithm>
#include <sstream>

namespace mixtilt {

Json to_json(const LaurentPoly& p) {
  Json j = Json::object();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    j[std::to_string(it->first)] = it->second.get_str();
  return j;
}

LaurentPoly laurent_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("polynomial must be a JSON object");
  LaurentPoly p;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw FormatError("coefficient for exponent " + key + " must be a string");
    int e = 0;
    Integer c;
    try {
      std::size_t used = 0;
      e = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw FormatError("bad exponent '" + key + "'");
    }
    if (c.set_str(value.get<std::string>(), 10) != 0)
      throw FormatError("bad coefficient '" + value.get<std::string>() + "'");
    if (c == 0) throw FormatError("explicit zero coefficient for exponent " + key);
    p.add_term(e, c);
  }
  return p;
}

Json system_to_json(const CoxeterSystem& sys) {
  Json j;
  j["label"] = sys.descriptor().label;
  j["cartan"] = sys.cartan();
  j["label_offset"] = sys.descriptor().label_offset;
  return j;
}

namespace {

std::vector<Element> sorted(const CoxeterSystem& sys, std::vector<Element> v) {
  std::sort(v.begin(), v.end(), [&](Element a, Element b) { return sys.shortlex_less(a, b); });
  return v;
}

Element parse_reduced(const CoxeterSystem& sys, const std::string& word) {
  Element e = sys.parse(word);
  if (sys.format(e) != word) throw FormatError("word '" + word + "' is not in canonical form");
  return e;
}

}  // namespace

Json to_json(const CoxeterSystem& sys, const WeightVector& v) {
  Json j = Json::object();
  for (Element e : sorted(sys, v.support())) j[sys.format(e)] = to_json(v.at(e));
  return j;
}

WeightVector vector_from_json(const CoxeterSystem& sys, const Json& j) {
  if (!j.is_object()) throw FormatError("weight vector must be a JSON object");
  WeightVector v;
  for (const auto& [word, poly] : j.items()) v.set(parse_reduced(sys, word), laurent_from_json(poly));
  return v;
}

Json to_json(const CoxeterSystem& sys, const WeightMatrix& m) {
  Json j;
  j["system"] = system_to_json(sys);
  Json ideal = Json::array();
  for (Element e : m.index()) ideal.push_back(sys.format(e));
  j["ideal"] = ideal;
  Json columns = Json::object();
  for (std::size_t c = 0; c < m.size(); ++c) {
    Json col = Json::object();
    for (std::size_t r = 0; r < m.size(); ++r)
      if (!m.at(r, c).is_zero()) col[sys.format(m.index()[r])] = to_json(m.at(r, c));
    columns[sys.format(m.index()[c])] = col;
  }
  j["columns"] = columns;
  return j;
}

WeightMatrix matrix_from_json(const CoxeterSystem& sys, const Json& j) {
  try {
    if (j.at("system").at("cartan").get<CartanMatrix>() != sys.cartan())
      throw FormatError("matrix belongs to a different Cartan matrix");
    std::vector<Element> elems;
    for (const auto& w : j.at("ideal")) elems.push_back(parse_reduced(sys, w.get<std::string>()));
    OrderIdeal ideal(sys, elems);
    if (ideal.size() != elems.size()) throw FormatError("duplicate words in ideal");
    WeightMatrix m(ideal);
    for (const auto& [obj, col] : j.at("columns").items()) {
      const std::size_t c = ideal.index_of(parse_reduced(sys, obj));
      for (const auto& [stratum, poly] : col.items())
        m.at(ideal.index_of(parse_reduced(sys, stratum)), c) = laurent_from_json(poly);
    }
    return m;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("malformed matrix JSON: ") + e.what());
  } catch (const CoxeterError& e) {
    throw FormatError(std::string("malformed matrix JSON: ") + e.what());
  }
}

std::string matrix_to_csv(const CoxeterSystem& sys, const WeightMatrix& m) {
  std::ostringstream os;
  os << "object,stratum,polynomial\n";
  for (std::size_t c = 0; c < m.size(); ++c)
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (m.at(r, c).is_zero()) continue;
      os << '"' << sys.format(m.index()[c]) << "\",\"" << sys.format(m.index()[r]) << "\",\""
         << m.at(r, c).to_string() << "\"\n";
    }
  return os.str();
}

std::string matrix_to_text(const CoxeterSystem& sys, const WeightMatrix& m) {
  std::ostringstream os;
  os << "# " << sys.descriptor().label << ", " << m.size() << " elements\n";
  for (std::size_t c = 0; c < m.size(); ++c) {
    os << sys.format(m.index()[c]) << ":\n";
    for (std::size_t r = 0; r < m.size(); ++r)
      if (!m.at(r, c).is_zero())
        os << "  " << sys.format(m.index()[r]) << "  " << m.at(r, c).to_string() << '\n';
  }
  return os.str();
}

}  // namespace mixtilt
