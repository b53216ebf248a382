#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qbailey/bailey.hpp"
#include "qbailey/identities.hpp"
#include "qbailey/pairs.hpp"
#include "qbailey/partitions.hpp"

using nlohmann::json;
using namespace qbailey;

namespace {

using DisplayParams = std::map<std::string, std::string>;

// One row of a report stream: a single identity verification or pair check.
struct ItemReport {
  std::string id;
  DisplayParams params;
  long order = 0;
  std::string status;  // "ok" | "mismatch" | "error"
  std::optional<long> first_mismatch_exponent;
  std::optional<std::string> lhs;
  std::optional<std::string> rhs;
  std::optional<long> pair_index;  // index of the first failing pair relation
  std::optional<std::string> message;
  long elapsed_ms = 0;
};

std::string params_str(const DisplayParams& ps) {
  if (ps.empty()) return "-";
  std::string out;
  for (const auto& [k, v] : ps) {
    if (!out.empty()) out += ",";
    out += k + "=" + v;
  }
  return out;
}

json item_to_json(const ItemReport& r) {
  json j;
  j["id"] = r.id;
  j["params"] = json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["order"] = r.order;
  j["status"] = r.status;
  if (r.first_mismatch_exponent) j["first_mismatch_exponent"] = *r.first_mismatch_exponent;
  if (r.lhs) j["lhs"] = *r.lhs;
  if (r.rhs) j["rhs"] = *r.rhs;
  if (r.pair_index) j["pair_index"] = *r.pair_index;
  if (r.message) j["message"] = *r.message;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

std::string item_text(const ItemReport& r) {
  std::ostringstream os;
  os << r.id << "  params=" << params_str(r.params) << "  order=" << r.order << "  " << r.status;
  if (r.first_mismatch_exponent) {
    os << "  first_mismatch_exponent=" << *r.first_mismatch_exponent;
    if (r.lhs) os << "  lhs=" << *r.lhs;
    if (r.rhs) os << "  rhs=" << *r.rhs;
  }
  if (r.pair_index) os << "  pair_index=" << *r.pair_index;
  if (r.message) os << "  message=" << *r.message;
  os << "  elapsed_ms=" << r.elapsed_ms;
  return os.str();
}

bool write_out(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    return true;
  }
  std::ofstream f(path);
  if (!f) {
    std::cerr << "error: cannot open output path: " << path << "\n";
    return false;
  }
  f << content;
  return true;
}

ItemReport run_identity_item(const std::string& id, const ParamMap& ps, long order) {
  ItemReport r;
  r.id = id;
  for (const auto& [k, v] : ps) r.params[k] = v.to_string();
  r.order = order;
  VerificationReport rep = verify_identity(id, ps, order);
  r.status = rep.equal ? "ok" : "mismatch";
  if (rep.first_mismatch) {
    r.first_mismatch_exponent = rep.first_mismatch->exponent;
    r.lhs = rep.first_mismatch->lhs.to_string();
    r.rhs = rep.first_mismatch->rhs.to_string();
  }
  r.elapsed_ms = rep.elapsed_ms;
  return r;
}

struct PairJob {
  std::string id;
  DisplayParams params;
  std::function<BaileyPair()> make;
  long quick_n_max;
  long quick_order;
  long full_n_max;
  long full_order;
};

const std::vector<PairJob>& pair_jobs() {
  static const std::vector<PairJob> jobs = {
      {"pair-abc",
       {{"a", "2"}, {"b", "3"}, {"c", "5"}},
       [] {
         return pair_andrews_abc(Monomial::constant(2), Monomial::constant(3),
                                 Monomial::constant(5));
       },
       10, 100, 12, 60},
      {"pair-cor22", {}, [] { return pair_cor22(); }, 10, 100, 20, 80},
      {"pair-cor23", {}, [] { return pair_cor23(); }, 10, 100, 20, 80},
      {"pair-cor24", {}, [] { return pair_cor24(); }, 10, 100, 20, 80},
      {"pair-theorem21",
       {{"a", "2"}, {"x", "3"}},
       [] { return pair_theorem21(Monomial::constant(2), Monomial::constant(3)); },
       10, 100, 16, 50},
      {"pair-x-to-zero",
       {{"a", "q"}},
       [] { return pair_x_to_zero(Monomial::q(1)); },
       10, 100, 20, 80},
  };
  return jobs;
}

ItemReport run_pair_item(const PairJob& job, long n_max, long order) {
  ItemReport r;
  r.id = job.id;
  r.params = job.params;
  r.order = order;
  auto t0 = std::chrono::steady_clock::now();
  PairCheckReport rep = verify_pair(job.make(), n_max, order);
  auto t1 = std::chrono::steady_clock::now();
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  if (rep.ok()) {
    r.status = "ok";
  } else {
    r.status = "mismatch";
    r.first_mismatch_exponent = rep.failure->exponent;
    r.lhs = rep.failure->lhs.to_string();
    r.rhs = rep.failure->rhs.to_string();
    r.pair_index = rep.failure->n;
  }
  return r;
}

struct IdentityJob {
  std::string id;
  ParamMap ps;
  long order;
};

std::vector<IdentityJob> identity_jobs(bool full) {
  std::vector<IdentityJob> jobs;
  if (!full) {
    for (const char* id : {"cor-3.5", "cor-3.6", "cor-3.7", "cor-3.8", "cor-3.9", "eq-3.13",
                           "sigma-star-part", "o-star-part"})
      jobs.push_back({id, {}, 100});
    jobs.push_back({"eq-3.11", {{"x", Rational(2)}}, 100});
    jobs.push_back({"eq-3.12", {{"x", Rational(2)}}, 100});
    jobs.push_back({"fine-16.3", {{"n", Rational(10)}, {"b", Rational(2)}}, 100});
    return jobs;
  }
  jobs.push_back({"cor-3.5", {}, 500});
  jobs.push_back({"cor-3.6", {}, 2000});
  jobs.push_back({"cor-3.7", {}, 1000});
  jobs.push_back({"cor-3.8", {}, 1000});
  jobs.push_back({"cor-3.9", {}, 500});
  jobs.push_back({"eq-3.13", {}, 2000});
  jobs.push_back({"sigma-star-part", {}, 61});
  jobs.push_back({"o-star-part", {}, 61});
  for (Rational x : {Rational(2), Rational(-3), Rational(1, 2)}) {
    jobs.push_back({"eq-3.11", {{"x", x}}, 300});
    jobs.push_back({"eq-3.12", {{"x", x}}, 300});
  }
  for (long n = 0; n <= 25; ++n)
    for (Rational b : {Rational(2), Rational(-3), Rational(1, 2)})
      jobs.push_back({"fine-16.3", {{"n", Rational(n)}, {"b", b}}, 200});
  return jobs;
}

// Runs the tasks on `parallelism` workers. Assembly is index-stable; the
// caller sorts by (id, params) afterwards, so scheduling never shows.
std::vector<ItemReport> run_pool(const std::vector<std::function<ItemReport()>>& tasks,
                                 long parallelism) {
  std::vector<ItemReport> results(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        results[i] = tasks[i]();
      } catch (const std::exception& e) {
        results[i].status = "error";
        results[i].message = e.what();
      }
    }
  };
  size_t n_threads = static_cast<size_t>(parallelism);
  if (n_threads <= 1 || tasks.size() <= 1) {
    worker();
    return results;
  }
  if (n_threads > tasks.size()) n_threads = tasks.size();
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return results;
}

void sort_reports(std::vector<ItemReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const ItemReport& a, const ItemReport& b) {
    if (a.id != b.id) return a.id < b.id;
    if (a.params != b.params) return a.params < b.params;
    return a.order < b.order;
  });
}

// Exit code for a batch: config-grade errors dominate, then mismatches.
int batch_exit(const std::vector<ItemReport>& reports) {
  bool mismatch = false;
  for (const auto& r : reports) {
    if (r.status == "error") return 2;
    if (r.status == "mismatch") mismatch = true;
  }
  return mismatch ? 1 : 0;
}

std::string render_series_text(const std::string& name, const QSeries& s) {
  std::ostringstream os;
  os << name << " = ";
  bool first = true;
  for (long e = s.valuation(); e < s.order(); ++e) {
    Rational c = s.coeff_at(e);
    if (c.is_zero()) continue;
    if (first) {
      os << Monomial{c, e}.to_string();
      first = false;
    } else if (c.sign() > 0) {
      os << " + " << Monomial{c, e}.to_string();
    } else {
      os << " - " << Monomial{-c, e}.to_string();
    }
  }
  if (first) os << "0";
  os << " + O(q^" << s.order() << ")\n";
  return os.str();
}

std::string render_series_csv(const QSeries& s) {
  std::ostringstream os;
  os << "exponent,numerator,denominator\n";
  for (long e = s.valuation(); e < s.order(); ++e) {
    Rational c = s.coeff_at(e);
    if (c.is_zero()) continue;
    os << e << "," << c.raw().get_num().get_str() << "," << c.raw().get_den().get_str() << "\n";
  }
  return os.str();
}

json series_to_json(const std::string& name, const QSeries& s) {
  json j;
  j["id"] = name;
  j["order"] = s.order();
  j["status"] = "ok";
  json coeffs = json::array();
  for (long e = s.valuation(); e < s.order(); ++e) {
    Rational c = s.coeff_at(e);
    if (c.is_zero()) continue;
    coeffs.push_back(json::array({e, c.to_string()}));
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

ParamMap parse_params(const std::vector<std::string>& raw) {
  ParamMap ps;
  for (const std::string& kv : raw) {
    auto pos = kv.find('=');
    if (pos == std::string::npos || pos == 0)
      throw std::invalid_argument("--param expects key=value, got \"" + kv + "\"");
    ps[kv.substr(0, pos)] = Rational::from_string(kv.substr(pos + 1));
  }
  return ps;
}

std::string fixed6(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-series expansion, identity verification, and partition census"};
  app.require_subcommand(1);

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "expand a named series to a given order");
  std::string expand_name;
  long expand_order = 50;
  std::string expand_format = "text";
  std::string expand_output;
  expand_cmd->add_option("name", expand_name, "series name (sigma, sigma_star, o_star_gen, f1, f1_prime)")
      ->required();
  expand_cmd->add_option("--order", expand_order, "truncation order")->check(CLI::PositiveNumber);
  expand_cmd->add_option("--format", expand_format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  expand_cmd->add_option("--output", expand_output, "write the report to this path");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "verify one registry identity");
  std::string verify_id;
  long verify_order = 100;
  std::vector<std::string> verify_params;
  std::string verify_format = "text";
  std::string verify_output;
  verify_cmd->add_option("id", verify_id, "registry identity id")->required();
  verify_cmd->add_option("--order", verify_order, "truncation order")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--param", verify_params, "key=value rational parameter (repeatable)");
  verify_cmd->add_option("--format", verify_format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--output", verify_output, "write the report to this path");

  // verify-all
  auto* all_cmd = app.add_subcommand("verify-all", "run the whole registry plus all pair checks");
  std::string default_profile = "quick";
  bool env_profile_bad = false;
  if (const char* env = std::getenv("QBAILEY_PROFILE")) {
    std::string value(env);
    if (value == "quick" || value == "full")
      default_profile = value;
    else if (!value.empty())
      env_profile_bad = true;
  }
  std::string all_profile = default_profile;
  std::vector<std::string> all_only;
  long all_parallel = 1;
  std::string all_format = "text";
  std::string all_output;
  all_cmd->add_option("--profile", all_profile, "order profile")
      ->check(CLI::IsMember({"quick", "full"}));
  all_cmd->add_option("--only", all_only, "restrict to these item ids (repeatable)");
  all_cmd->add_option("--parallel", all_parallel, "worker pool size")->check(CLI::Range(1L, 256L));
  all_cmd->add_option("--format", all_format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  all_cmd->add_option("--output", all_output, "write the report to this path");

  // pairs
  auto* pairs_cmd = app.add_subcommand("pairs", "run the built-in pair relation checks");
  long pairs_n_max = 10;
  long pairs_order = 100;
  std::string pairs_format = "text";
  std::string pairs_output;
  pairs_cmd->add_option("--n-max", pairs_n_max, "largest pair index checked")
      ->check(CLI::PositiveNumber);
  pairs_cmd->add_option("--order", pairs_order, "truncation order")->check(CLI::PositiveNumber);
  pairs_cmd->add_option("--format", pairs_format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  pairs_cmd->add_option("--output", pairs_output, "write the report to this path");

  // partitions
  auto* parts_cmd = app.add_subcommand("partitions", "partition census values and enumerations");
  std::string parts_kind;
  long parts_n = 0;
  std::string parts_format = "text";
  std::string parts_output;
  parts_cmd->add_option("kind", parts_kind, "o | o-star | s-plus-t | norm-form | gapfree")
      ->required()
      ->check(CLI::IsMember({"o", "o-star", "s-plus-t", "norm-form", "gapfree"}));
  parts_cmd->add_option("--n", parts_n, "argument")->required();
  parts_cmd->add_option("--format", parts_format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  parts_cmd->add_option("--output", parts_output, "write the report to this path");

  // lacunarity
  auto* lac_cmd = app.add_subcommand("lacunarity", "sparsity census over quarter windows");
  std::string lac_name;
  long lac_order = 5000;
  std::string lac_format = "text";
  std::string lac_output;
  lac_cmd->add_option("name", lac_name,
                      "named series, parameter-free registry id, or \"geometric\"")
      ->required();
  lac_cmd->add_option("--order", lac_order, "scan order (>= 1000)");
  lac_cmd->add_option("--format", lac_format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  lac_cmd->add_option("--output", lac_output, "write the report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*expand_cmd) {
      QSeries s = expand_named_series(expand_name, expand_order);
      std::string out;
      if (expand_format == "text")
        out = render_series_text(expand_name, s);
      else if (expand_format == "csv")
        out = render_series_csv(s);
      else
        out = series_to_json(expand_name, s).dump(2) + "\n";
      return write_out(out, expand_output) ? 0 : 2;
    }

    if (*verify_cmd) {
      ParamMap ps = parse_params(verify_params);
      ItemReport r = run_identity_item(verify_id, ps, verify_order);
      std::string out = verify_format == "json" ? item_to_json(r).dump(2) + "\n"
                                                : item_text(r) + "\n";
      if (!write_out(out, verify_output)) return 2;
      return r.status == "ok" ? 0 : 1;
    }

    if (*all_cmd) {
      if (env_profile_bad && all_cmd->count("--profile") == 0)
        throw std::invalid_argument("QBAILEY_PROFILE must be \"quick\" or \"full\"");
      bool full = all_profile == "full";
      std::vector<std::string> ids;
      std::vector<std::function<ItemReport()>> tasks;
      for (const IdentityJob& job : identity_jobs(full)) {
        ids.push_back(job.id);
        tasks.push_back([job] { return run_identity_item(job.id, job.ps, job.order); });
      }
      for (const PairJob& job : pair_jobs()) {
        ids.push_back(job.id);
        long n_max = full ? job.full_n_max : job.quick_n_max;
        long order = full ? job.full_order : job.quick_order;
        tasks.push_back([job, n_max, order] { return run_pair_item(job, n_max, order); });
      }
      if (!all_only.empty()) {
        std::vector<std::function<ItemReport()>> kept;
        for (size_t i = 0; i < tasks.size(); ++i)
          for (const std::string& want : all_only)
            if (ids[i] == want) {
              kept.push_back(std::move(tasks[i]));
              break;
            }
        if (kept.empty())
          throw UnknownName("--only matched no registry or pair-check id");
        tasks = std::move(kept);
      }
      std::vector<ItemReport> reports = run_pool(tasks, all_parallel);
      sort_reports(reports);
      long identity_items = 0, pair_checks = 0, ok = 0, mismatch = 0, error = 0;
      for (const auto& r : reports) {
        (r.id.rfind("pair-", 0) == 0 ? pair_checks : identity_items) += 1;
        if (r.status == "ok") ++ok;
        else if (r.status == "mismatch") ++mismatch;
        else ++error;
      }
      std::string out;
      if (all_format == "json") {
        json j;
        j["profile"] = all_profile;
        json items = json::array();
        for (const auto& r : reports) items.push_back(item_to_json(r));
        j["items"] = std::move(items);
        j["summary"] = {{"identity_items", identity_items},
                        {"pair_checks", pair_checks},
                        {"ok", ok},
                        {"mismatch", mismatch},
                        {"error", error}};
        out = j.dump(2) + "\n";
      } else {
        std::ostringstream os;
        for (const auto& r : reports) os << item_text(r) << "\n";
        os << "profile=" << all_profile << " identity_items=" << identity_items
           << " pair_checks=" << pair_checks << " ok=" << ok << " mismatch=" << mismatch
           << " error=" << error << "\n";
        out = os.str();
      }
      if (!write_out(out, all_output)) return 2;
      return batch_exit(reports);
    }

    if (*pairs_cmd) {
      std::vector<std::function<ItemReport()>> tasks;
      for (const PairJob& job : pair_jobs())
        tasks.push_back(
            [job, pairs_n_max, pairs_order] { return run_pair_item(job, pairs_n_max, pairs_order); });
      std::vector<ItemReport> reports = run_pool(tasks, 1);
      sort_reports(reports);
      std::string out;
      if (pairs_format == "json") {
        json items = json::array();
        for (const auto& r : reports) items.push_back(item_to_json(r));
        out = items.dump(2) + "\n";
      } else {
        std::ostringstream os;
        for (const auto& r : reports) os << item_text(r) << "\n";
        out = os.str();
      }
      if (!write_out(out, pairs_output)) return 2;
      return batch_exit(reports);
    }

    if (*parts_cmd) {
      std::string out;
      json j;
      j["id"] = parts_kind;
      j["n"] = parts_n;
      if (parts_kind == "o" || parts_kind == "o-star" || parts_kind == "s-plus-t") {
        long long value = parts_kind == "o"        ? o_count(parts_n)
                          : parts_kind == "o-star" ? o_star_count(parts_n)
                                                   : s_plus_t(parts_n);
        j["value"] = value;
        out = parts_format == "json" ? j.dump(2) + "\n" : std::to_string(value) + "\n";
      } else if (parts_kind == "norm-form") {
        NormFormCount nf = norm_form_count(parts_n);
        j["count"] = nf.count;
        j["sign"] = nf.sign ? json(*nf.sign) : json(nullptr);
        if (parts_format == "json") {
          out = j.dump(2) + "\n";
        } else {
          out = "count=" + std::to_string(nf.count) +
                " sign=" + (nf.sign ? std::to_string(*nf.sign) : "none") + "\n";
        }
      } else {
        auto list = enumerate_gapfree_odd(parts_n);
        if (parts_format == "json") {
          json arr = json::array();
          for (const auto& p : list) {
            json entry;
            json parts = json::array();
            for (size_t k = 0; k < p.multiplicities.size(); ++k)
              for (long c = 0; c < p.multiplicities[k]; ++c)
                parts.push_back(2 * static_cast<long>(k) + 1);
            entry["parts"] = std::move(parts);
            entry["weight"] = p.weight();
            arr.push_back(std::move(entry));
          }
          j["partitions"] = std::move(arr);
          out = j.dump(2) + "\n";
        } else {
          std::ostringstream os;
          for (const auto& p : list) {
            bool head = true;
            for (size_t k = 0; k < p.multiplicities.size(); ++k)
              for (long c = 0; c < p.multiplicities[k]; ++c) {
                os << (head ? "" : " ") << 2 * k + 1;
                head = false;
              }
            os << "  weight=" << (p.weight() > 0 ? "+1" : "-1") << "\n";
          }
          out = os.str();
        }
      }
      return write_out(out, parts_output) ? 0 : 2;
    }

    if (*lac_cmd) {
      std::string out;
      if (lac_format == "csv") {
        if (lac_order < 1000)
          throw std::invalid_argument("lacunarity scan needs order >= 1000, got " +
                                      std::to_string(lac_order));
        out = render_series_csv(scan_series(lac_name, lac_order));
      } else {
        LacunarityReport rep = lacunarity_scan(lac_name, lac_order);
        if (lac_format == "json") {
          json j;
          j["id"] = rep.id;
          j["order"] = rep.order;
          j["nonzero_count"] = rep.nonzero_count;
          j["density"] = rep.density;
          json wins = json::array();
          for (const auto& w : rep.windows)
            wins.push_back({{"begin", w.begin},
                            {"end", w.end},
                            {"nonzero_count", w.nonzero_count},
                            {"density", w.density}});
          j["windows"] = std::move(wins);
          out = j.dump(2) + "\n";
        } else {
          std::ostringstream os;
          os << "id=" << rep.id << " order=" << rep.order << " nonzero=" << rep.nonzero_count
             << " density=" << fixed6(rep.density) << "\n";
          for (const auto& w : rep.windows)
            os << "window [" << w.begin << "," << w.end << "): nonzero=" << w.nonzero_count
               << " density=" << fixed6(w.density) << "\n";
          out = os.str();
        }
      }
      return write_out(out, lac_output) ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
