// Command-line driver: mixtilt <task> [options]

#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixtilt/job.hpp"

namespace {

mixtilt::CartanMatrix parse_cartan(const std::string& text) {
  mixtilt::CartanMatrix m;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<int> r;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) r.push_back(std::stoi(cell));
    m.push_back(std::move(r));
  }
  return m;
}

struct Options {
  std::string type;
  std::string cartan;
  std::string top;
  std::size_t max_length = 0;
  std::vector<std::string> pair;
  std::string parabolic;
  std::string format = "json";
  std::string cache_dir;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--type", o.type, "Type label: A3, B2, ~A2 (or 'affine A2'), ...");
  sub->add_option("--cartan", o.cartan, "Explicit Cartan matrix, rows separated by ';' (e.g. \"2,-1;-1,2\")");
  sub->add_option("--top", o.top, "Truncate to the Bruhat ideal below this word");
  sub->add_option("--max-length", o.max_length, "Truncate to elements of length <= L");
  sub->add_option("--format", o.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--cache-dir", o.cache_dir, "Table cache directory (default: $MIXTILT_CACHE_DIR)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Weight polynomials of mixed tilting sheaves on (affine) flag varieties.\n"
      "Words are comma-separated generator labels, identity is 'e'.\n"
      "Finite types label generators 1..n; affine types use 0 for the affine node and 1..n for the rest;\n"
      "explicit Cartan matrices label rows 0..rank-1.\n"
      "Exit codes: 0 success, 1 verification failure, 2 usage or internal error."};
  app.require_subcommand(1);
  Options o;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"kl", "Kazhdan-Lusztig polynomial P_{x,y}, its Laurent form h and mu"},
      {"tilting", "Tilting weight matrix (self-dual solve, non-cancellation rule)"},
      {"ic", "IC weight matrix in the standard basis"},
      {"invert", "Tilting matrix recovered by inverting the opposite-side IC matrix"},
      {"push", "Push-forward of every tilting object to a partial flag variety"},
      {"verify", "Cross-validate all methods; exit 1 on any discrepancy"},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, o);
    if (std::string(s.name) == "kl")
      sub->add_option("--pair", o.pair, "X Y")->expected(2)->required();
    if (std::string(s.name) == "push")
      sub->add_option("--parabolic", o.parabolic, "Generator subset J, e.g. \"1,2\" (empty or 'none' for J = {})");
    if (std::string(s.name) == "verify")
      sub->add_option("--parabolic", o.parabolic, "'all' (default), 'none', or subsets separated by ';'");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : mixtilt::kExitError;
  }

  mixtilt::JobSpec job;
  try {
    auto* sub = app.get_subcommands().front();
    job.task = mixtilt::parse_task(sub->get_name());
    if (!o.type.empty() == !o.cartan.empty()) throw std::invalid_argument("give exactly one of --type, --cartan");
    job.system = o.type.empty() ? mixtilt::CoxeterDescriptor::from_cartan(parse_cartan(o.cartan))
                                : mixtilt::CoxeterDescriptor::parse(o.type);
    if (sub->count("--top")) job.top = o.top;
    if (sub->count("--max-length")) job.max_length = o.max_length;
    if (o.pair.size() == 2) job.pair = std::make_pair(o.pair[0], o.pair[1]);
    if (sub->get_option_no_throw("--parabolic") && sub->count("--parabolic")) job.parabolic = o.parabolic;
    job.format = mixtilt::parse_format(o.format);
    if (!o.cache_dir.empty()) job.cache_dir = o.cache_dir;
  } catch (const std::exception& e) {
    nlohmann::json record;
    record["error"] = {{"kind", "usage"}, {"message", e.what()}};
    std::cerr << record.dump() << '\n';
    return mixtilt::kExitError;
  }

  const auto result = mixtilt::run(job);
  std::cout << result.output;
  std::cerr << result.diagnostics;
  return result.exit_code;
}
