#include "mixtilt/job.hpp"

#include <cstdlib>
#include <sstream>

#include "mixtilt/cache.hpp"
#include "mixtilt/hecke.hpp"
#include "mixtilt/serialize.hpp"
#include "mixtilt/tilting.hpp"

namespace mixtilt {

Task parse_task(std::string_view name) {
  if (name == "kl") return Task::Kl;
  if (name == "tilting") return Task::Tilting;
  if (name == "ic") return Task::Ic;
  if (name == "invert") return Task::Invert;
  if (name == "push") return Task::Push;
  if (name == "verify") return Task::Verify;
  throw std::invalid_argument("unknown task '" + std::string(name) + "'");
}

std::string_view to_string(Task t) {
  switch (t) {
    case Task::Kl: return "kl";
    case Task::Tilting: return "tilting";
    case Task::Ic: return "ic";
    case Task::Invert: return "invert";
    case Task::Push: return "push";
    case Task::Verify: return "verify";
  }
  return "?";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string error_record(std::string_view kind, std::string_view message) {
  Json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  return j.dump() + "\n";
}

struct Truncation {
  OrderIdeal ideal;
  std::string description;  // part of the cache key
};

Truncation truncate(const CoxeterSystem& sys, const JobSpec& job) {
  if (job.top && job.max_length) throw UsageError("give either --top or --max-length, not both");
  if (job.top) {
    Element top = sys.parse(*job.top);
    return {sys.enumerate_ideal(top), "ideal:" + sys.format(top)};
  }
  if (job.max_length) return {sys.enumerate_ball(*job.max_length), "ball:" + std::to_string(*job.max_length)};
  if (!sys.is_finite()) throw UsageError("infinite truncation: an infinite group needs --top or --max-length");
  return {sys.enumerate_ball(std::nullopt), "all"};
}

std::vector<int> parse_subset(const CoxeterSystem& sys, std::string_view text) {
  std::vector<int> out;
  std::string s(text);
  if (s.empty() || s == "none" || s == "-") return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      int label = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(sys.to_internal(label));
    } catch (const CoxeterError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("malformed parabolic subset '" + s + "'");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<int>> parse_subsets(const CoxeterSystem& sys, const std::optional<std::string>& text) {
  if (!text || *text == "all") return all_parabolic_subsets(sys);
  std::vector<std::vector<int>> out;
  if (*text == "none") return out;
  std::stringstream ss(*text);
  std::string tok;
  while (std::getline(ss, tok, ';')) out.push_back(parse_subset(sys, tok));
  return out;
}

Json subset_json(const CoxeterSystem& sys, const std::vector<int>& subset) {
  Json j = Json::array();
  for (int i : subset) j.push_back(sys.to_label(i));
  return j;
}

std::string emit_matrix(const CoxeterSystem& sys, const WeightMatrix& m, const std::string& json_payload,
                        OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return json_payload;
    case OutputFormat::Csv: return matrix_to_csv(sys, m);
    case OutputFormat::Text: return matrix_to_text(sys, m);
  }
  return {};
}

RunResult run_matrix_task(const CoxeterSystem& sys, const HeckeContext& hecke, const JobSpec& job) {
  RunResult result;
  const Truncation trunc = truncate(sys, job);

  std::optional<TableCache> cache;
  if (job.cache_dir) {
    cache.emplace(*job.cache_dir);
  } else if (const char* env = std::getenv(kCacheDirEnv); env && *env) {
    cache.emplace(env);
  }
  // words in the payload carry the label offset, so it is part of the key
  const std::string key = TableCache::make_key(
      system_to_json(sys)["cartan"].dump() + "/" + std::to_string(sys.descriptor().label_offset),
      trunc.description, to_string(job.task));

  if (cache) {
    auto hit = cache->load(key);
    if (hit.status == TableCache::Status::Hit) {
      try {
        WeightMatrix m = matrix_from_json(sys, Json::parse(hit.payload));
        result.diagnostics += "cache: hit " + key + "\n";
        result.output = emit_matrix(sys, m, to_json(sys, m).dump(2) + "\n", job.format);
        return result;
      } catch (const std::exception& e) {
        result.diagnostics += "warning: cache entry " + key + " unreadable (" + e.what() + "), recomputing\n";
      }
    } else if (hit.status != TableCache::Status::Miss) {
      result.diagnostics += "warning: cache entry " + key + " " + std::string(to_string(hit.status)) +
                            ", recomputing\n";
    } else {
      result.diagnostics += "cache: miss " + key + "\n";
    }
  }

  WeightMatrix m;
  switch (job.task) {
    case Task::Tilting: m = tilting_matrix(hecke, trunc.ideal); break;
    case Task::Ic: m = ic_matrix(hecke, trunc.ideal); break;
    case Task::Invert: m = tilting_from_inversion(hecke, trunc.ideal); break;
    default: throw std::logic_error("not a matrix task");
  }
  const std::string payload = to_json(sys, m).dump(2) + "\n";
  if (cache) cache->store(key, payload);
  result.output = emit_matrix(sys, m, payload, job.format);
  return result;
}

RunResult run_kl(const CoxeterSystem& sys, const HeckeContext& hecke, const JobSpec& job) {
  if (!job.pair) throw UsageError("kl needs --pair X Y");
  const Element x = sys.parse(job.pair->first), y = sys.parse(job.pair->second);
  const bool leq = sys.bruhat_leq(x, y);
  const LaurentPoly h = hecke.kl_h(x, y);
  const LaurentPoly p = leq ? hecke.kl_P(x, y) : LaurentPoly();
  RunResult result;
  switch (job.format) {
    case OutputFormat::Json: {
      Json j;
      j["system"] = system_to_json(sys);
      j["x"] = sys.format(x);
      j["y"] = sys.format(y);
      j["bruhat_leq"] = leq;
      j["h"] = to_json(h);
      j["P"] = to_json(p);
      j["P_text"] = p.to_string_ascending("q");
      j["h_text"] = h.to_string();
      j["mu"] = hecke.mu(x, y).get_str();
      result.output = j.dump(2) + "\n";
      break;
    }
    case OutputFormat::Csv:
      result.output = "x,y,P,h,mu\n\"" + sys.format(x) + "\",\"" + sys.format(y) + "\",\"" +
                      p.to_string_ascending("q") + "\",\"" + h.to_string() + "\"," + hecke.mu(x, y).get_str() + "\n";
      break;
    case OutputFormat::Text:
      result.output = "P = " + p.to_string_ascending("q") + "\nh = " + h.to_string() +
                      "\nmu = " + hecke.mu(x, y).get_str() + "\n";
      break;
  }
  return result;
}

RunResult run_push(const CoxeterSystem& sys, const HeckeContext& hecke, const JobSpec& job) {
  const Truncation trunc = truncate(sys, job);
  const std::vector<int> subset = parse_subset(sys, job.parabolic.value_or(""));
  Json results = Json::object();
  std::ostringstream csv, text;
  csv << "object,image,stratum,polynomial\n";
  for (Element alpha : trunc.ideal) {
    const PushforwardResult r = pushforward_tilting(hecke, alpha, subset, trunc.ideal);
    Json entry;
    entry["zero"] = r.zero;
    entry["image"] = sys.format(r.image);
    if (!r.zero) entry["weights"] = to_json(sys, r.vector);
    results[sys.format(alpha)] = entry;
    text << sys.format(alpha) << " -> " << (r.zero ? "0" : sys.format(r.image)) << '\n';
    if (!r.zero) {
      const Json weights = to_json(sys, r.vector);
      for (const auto& [word, poly] : weights.items()) {
        const LaurentPoly p = laurent_from_json(poly);
        csv << '"' << sys.format(alpha) << "\",\"" << sys.format(r.image) << "\",\"" << word << "\",\""
            << p.to_string() << "\"\n";
        text << "  " << word << "  " << p.to_string() << '\n';
      }
    }
  }
  RunResult result;
  switch (job.format) {
    case OutputFormat::Json: {
      Json j;
      j["system"] = system_to_json(sys);
      j["subset"] = subset_json(sys, subset);
      j["results"] = results;
      result.output = j.dump(2) + "\n";
      break;
    }
    case OutputFormat::Csv: result.output = csv.str(); break;
    case OutputFormat::Text: result.output = text.str(); break;
  }
  return result;
}

RunResult run_verify(const CoxeterSystem& sys, const HeckeContext& hecke, const JobSpec& job) {
  const Truncation trunc = truncate(sys, job);
  const auto subsets = parse_subsets(sys, job.parabolic);
  const CrossValidationReport report = cross_validate(hecke, trunc.ideal, subsets);
  RunResult result;
  result.exit_code = report.passed() ? kExitOk : kExitVerificationFailed;
  switch (job.format) {
    case OutputFormat::Json: {
      Json j;
      j["system"] = system_to_json(sys);
      j["truncation"] = trunc.description;
      j["ideal_size"] = report.ideal_size;
      Json subs = Json::array();
      for (const auto& s : subsets) subs.push_back(subset_json(sys, s));
      j["subsets"] = subs;
      j["ringel"]["inversion"] = report.ringel.inversion_ok;
      j["ringel"]["w0_formula"] =
          report.ringel.w0_formula_ok ? Json(*report.ringel.w0_formula_ok) : Json(nullptr);
      j["ringel"]["same_side_product_identity"] = report.ringel.same_side_product_identity;
      j["ringel"]["sign_pattern"] = report.ringel.sign_pattern_ok;
      Json disc = Json::array();
      for (const auto& d : report.discrepancies)
        disc.push_back({{"check", d.check}, {"object", d.object}, {"stratum", d.stratum}, {"detail", d.detail}});
      j["discrepancies"] = disc;
      j["passed"] = report.passed();
      result.output = j.dump(2) + "\n";
      break;
    }
    case OutputFormat::Csv: {
      std::ostringstream os;
      os << "check,object,stratum,detail\n";
      for (const auto& d : report.discrepancies)
        os << d.check << ",\"" << d.object << "\",\"" << d.stratum << "\",\"" << d.detail << "\"\n";
      result.output = os.str();
      break;
    }
    case OutputFormat::Text: {
      std::ostringstream os;
      os << "system " << sys.descriptor().label << ", " << trunc.description << ", " << report.ideal_size
         << " elements, " << subsets.size() << " parabolic subsets\n";
      os << "ringel inversion: " << (report.ringel.inversion_ok ? "ok" : "FAIL") << '\n';
      if (report.ringel.w0_formula_ok)
        os << "w0 formula: " << (*report.ringel.w0_formula_ok ? "ok" : "FAIL") << '\n';
      os << "discrepancies: " << report.discrepancies.size() << '\n';
      for (const auto& d : report.discrepancies)
        os << "  " << d.check << " " << d.object << " " << d.stratum << ": " << d.detail << '\n';
      result.output = os.str();
      break;
    }
  }
  return result;
}

}  // namespace

RunResult run(const JobSpec& job) {
  try {
    CoxeterSystem sys(job.system);
    HeckeContext hecke(sys);
    switch (job.task) {
      case Task::Kl: return run_kl(sys, hecke, job);
      case Task::Tilting:
      case Task::Ic:
      case Task::Invert: return run_matrix_task(sys, hecke, job);
      case Task::Push: return run_push(sys, hecke, job);
      case Task::Verify: return run_verify(sys, hecke, job);
    }
    throw std::logic_error("unhandled task");
  } catch (const UsageError& e) {
    return {kExitError, {}, error_record("usage", e.what())};
  } catch (const CoxeterError& e) {
    return {kExitError, {}, error_record("usage", e.what())};
  } catch (const std::invalid_argument& e) {
    return {kExitError, {}, error_record("usage", e.what())};
  } catch (const SelfDualityError& e) {
    return {kExitError, {}, error_record("self-duality", e.what())};
  } catch (const std::exception& e) {
    return {kExitError, {}, error_record("internal", e.what())};
  }
}

}  // namespace mixtilt
