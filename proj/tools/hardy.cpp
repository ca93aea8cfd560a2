// Command-line front end. Settings are layered: key=value config file, then
// HARDY_* environment variables, then flags.

#include "hardy/driver.hpp"
#include "hardy/laguerre.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using hardy::Json;

struct Settings {
  std::map<std::string, std::string> flags;
  std::map<std::string, std::string> file;

  std::optional<std::string> get(const std::string& key) const {
    if (auto it = flags.find(key); it != flags.end()) return it->second;
    std::string env = "HARDY_";
    for (char c : key) env += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (const char* v = std::getenv(env.c_str()); v && *v) return std::string(v);
    if (auto it = file.find(key); it != file.end()) return it->second;
    return std::nullopt;
  }

  hardy::Overrides overrides() const {
    hardy::Overrides o;
    for (const char* k : {"psd_tol", "root_cluster_tol", "membership_tol", "exponent_merge_tol", "k_max"})
      if (auto v = get(k)) o[k] = *v;
    return o;
  }

  int bits(int fallback) const {
    auto v = get("bits");
    if (!v || *v == "auto") return fallback;
    int b = 0;
    try {
      b = std::stoi(*v);
    } catch (const std::exception&) {
      throw hardy::domain_error("bits must be an integer");
    }
    if (!hardy::valid_bits(b)) throw hardy::domain_error("bits must be one of 53, 128, 256, 512");
    return b;
  }
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '-', '_');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Inline JSON if the argument looks like JSON, otherwise a file name.
Json load_json(const std::string& arg) {
  const std::string t = trim(arg);
  const std::string text = (!t.empty() && (t[0] == '{' || t[0] == '[')) ? t : read_text(t);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw hardy::domain_error(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Exponent list: inline "0,1,-0.25+1.5i" or a JSON file of entries.
template <class R>
hardy::ExponentMultiset<R> load_exponents(const std::string& arg, const hardy::Context<R>& ctx) {
  const std::string t = trim(arg);
  if (!t.empty() && (t[0] == '[' || t[0] == '{' || (t.find(',') == std::string::npos && std::ifstream(t).good()))) {
    Json j = load_json(t);
    return hardy::exponents_from_json<R>(j.is_object() ? j.at("exponents") : j, ctx);
  }
  std::vector<hardy::ExponentEntry<R>> e;
  for (const auto& s : split_list(t)) {
    hardy::ExponentEntry<R> x{hardy::parse_complex<R>(s), 1};
    hardy::require_half_plane(x.s, ctx);
    e.push_back(x);
  }
  return hardy::ExponentMultiset<R>(std::move(e), ctx);
}

void emit(const std::string& text, const Settings& st) {
  if (auto out = st.get("out")) {
    std::ofstream f(*out);
    if (!f) throw std::runtime_error("cannot write " + *out);
    f << text;
  } else {
    std::cout << text;
  }
}

void emit(const Json& j, const Settings& st) { emit(j.dump(2) + "\n", st); }

std::string csv_num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hardy: monomial-space approximation of Hardy-operator invariant subspaces"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings st;

  std::string config_path;
  app.add_option("--config", config_path, "key = value settings file");
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(name, [&st, key](const std::string& v) { st.flags[key] = v; }, help);
  };
  flag("--bits", "bits", "precision: 53, 128, 256, 512 (approximate also accepts auto)");
  flag("--psd-tol", "psd_tol", "PSD tolerance multiplier on d*eps*||A||");
  flag("--root-cluster-tol", "root_cluster_tol", "root clustering tolerance");
  flag("--membership-tol", "membership_tol", "dist(e_k, S) threshold for membership");
  flag("--exponent-merge-tol", "exponent_merge_tol", "exponent merge tolerance");
  flag("--k-max", "k_max", "Laguerre search bound for k0");
  flag("--out", "out", "output file (default stdout)");
  flag("--format", "format", "json or csv where both exist");

  // apply
  auto* apply = app.add_subcommand("apply", "apply H, H* or the shift 1-H* to a log-monomial sum");
  std::string op, fn;
  apply->add_option("--op", op, "H | Hstar | shift")->required()->check(CLI::IsMember({"H", "Hstar", "shift"}));
  apply->add_option("--fn", fn, "function JSON (file or inline)")->required();

  // gram
  auto* gram = app.add_subcommand("gram", "Gram matrix of a generalized monomial space");
  std::string exps;
  gram->add_option("--exponents", exps, "comma list of exponents or JSON file")->required();

  // dist / project
  auto* dist = app.add_subcommand("dist", "distance from a function to Mult(S)");
  std::string space, cutoff;
  dist->add_option("--fn", fn, "function JSON")->required();
  dist->add_option("--space", space, "exponent JSON or comma list")->required();
  dist->add_option("--cutoff", cutoff, "restrict the function to [cutoff, 1]");
  auto* project = app.add_subcommand("project", "orthogonal projection onto Mult(S)");
  project->add_option("--fn", fn, "function JSON")->required();
  project->add_option("--space", space, "exponent JSON or comma list")->required();

  // laguerre
  auto* lag = app.add_subcommand("laguerre", "Laguerre basis functions and expansions");
  int lag_n = 0;
  int nmax = -1;
  std::string expand;
  lag->add_option("--n", lag_n, "index of e_n")->check(CLI::NonNegativeNumber);
  lag->add_option("--expand", expand, "function JSON to expand in e_0..e_nmax");
  lag->add_option("--nmax", nmax, "last coefficient index for --expand")->check(CLI::NonNegativeNumber);

  // muntz
  auto* muntz = app.add_subcommand("muntz", "Muntz-Szasz partial sums");
  std::string muntz_file;
  std::size_t terms = 0;
  double power = 0;
  muntz->add_option("--exponents", muntz_file, "exponent list file (JSON array or one per line)");
  muntz->add_option("--power", power, "use s_k = k^power, k = 1..terms");
  muntz->add_option("--terms", terms, "number of terms")->required();

  // pick
  auto* pick = app.add_subcommand("pick", "Pick matrix positivity test");
  std::string points, values, bound = "1";
  pick->add_option("--points", points, "comma list of points")->required();
  pick->add_option("--values", values, "comma list of values")->required();
  pick->add_option("--bound", bound, "norm bound M");

  // scaling
  auto* scaling = app.add_subcommand("scaling", "largest scaling constant C_N for a moment sequence");
  std::string moments;
  int scaling_n = -1;
  scaling->add_option("--moments", moments, "moment JSON")->required();
  scaling->add_option("--N", scaling_n, "use m_0..m_N (default: all)");

  // approximate
  auto* approx = app.add_subcommand("approximate", "approximate an invariant subspace by monomial spaces");
  std::string subspace, nlist = "1", tests, csv_path;
  bool no_escalate = false;
  approx->add_option("--subspace", subspace, "subspace spec JSON")->required();
  approx->add_option("--N", nlist, "N values, e.g. 1..12 or 2,4,8");
  approx->add_option("--tests", tests, "test function JSON array");
  approx->add_option("--csv", csv_path, "also write the summary CSV here");
  approx->add_flag("--no-escalate", no_escalate, "do not retry at higher precision");

  // experiments
  auto* exp = app.add_subcommand("experiment", "experiment drivers");
  exp->require_subcommand(1);
  auto* rou = exp->add_subcommand("roots-of-unity", "dist((log x)^n x^s, Mult_h) rates for h -> 0");
  std::string rou_s = "0", hlist = "0.1,0.05,0.025";
  int rou_m = 2;
  rou->set_help_flag("--help", "print this help message and exit");  // frees -h for the radii
  rou->add_option("--s", rou_s, "base exponent");
  rou->add_option("--m", rou_m, "number of roots of unity (multiplicity)")->check(CLI::Range(2, 12));
  rou->add_option("--h", hlist, "comma list of radii");
  auto* rec = exp->add_subcommand("recovery", "finite recovery of a monomial spec for N = d .. d+extra");
  int extra = 2;
  rec->add_option("--subspace", subspace, "monomial spec JSON")->required();
  rec->add_option("--extra", extra, "how many N beyond the dimension")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    // usage of the innermost subcommand that was recognized
    CLI::App* at = &app;
    while (!at->get_subcommands().empty()) at = at->get_subcommands().front();
    std::cerr << "\n" << at->help();
    return 1;
  }

  try {
    if (!config_path.empty()) st.file = read_config(config_path);
    if (auto f = st.get("format"); f && *f != "json" && *f != "csv") throw hardy::domain_error("format must be json or csv");
    const auto o = st.overrides();
    const bool csv = st.get("format").value_or("json") == "csv";

    if (*apply) {
      return hardy::with_precision(st.bits(53), [&]<class R>() {
        const auto ctx = hardy::make_context<R>(o);
        auto f = hardy::log_monomial_from_json<R>(load_json(fn), ctx);
        hardy::LogMonomialSum<R> g = op == "H"       ? hardy::apply_hardy(f, ctx)
                                     : op == "Hstar" ? hardy::apply_hardy_adjoint(f, ctx)
                                                     : hardy::apply_shift(f, ctx);
        emit(hardy::json_of(g), st);
        return 0;
      });
    }
    if (*gram) {
      return hardy::with_precision(st.bits(53), [&]<class R>() {
        const auto ctx = hardy::make_context<R>(o);
        emit(hardy::json_of(hardy::gram(load_exponents<R>(exps, ctx), ctx).matrix), st);
        return 0;
      });
    }
    if (*dist || *project) {
      return hardy::with_precision(st.bits(53), [&]<class R>() {
        const auto ctx = hardy::make_context<R>(o);
        auto f = hardy::log_monomial_from_json<R>(load_json(fn), ctx);
        auto s = load_exponents<R>(space, ctx);
        if (*project) {
          emit(hardy::json_of(hardy::project(f, s, ctx)), st);
          return 0;
        }
        Json out;
        if (!cutoff.empty()) {
          hardy::TestFunction<R> t{f, hardy::num::parse<R>(cutoff), "f"};
          if (t.cutoff < 0 || t.cutoff >= R(1)) throw hardy::domain_error("cutoff must lie in [0, 1)");
          out["dist"] = hardy::json_real(hardy::dist_to_space(t, s, ctx));
        } else {
          out["dist"] = hardy::json_real(hardy::dist_to_space(f, s, ctx));
          out["dist_by_determinants"] = hardy::json_real(hardy::dist_by_determinants(f, s, ctx));
        }
        emit(out, st);
        return 0;
      });
    }
    if (*lag) {
      return hardy::with_precision(st.bits(53), [&]<class R>() {
        const auto ctx = hardy::make_context<R>(o);
        Json out;
        if (!expand.empty()) {
          auto f = hardy::log_monomial_from_json<R>(load_json(expand), ctx);
          const int top = nmax >= 0 ? nmax : 16;
          Json c = Json::array();
          for (const auto& x : hardy::laguerre_coeffs(f, top, ctx)) c.push_back(hardy::json_complex(x));
          out["nmax"] = top;
          out["coeffs"] = std::move(c);
        } else {
          // e_n = sum_j C(n,j) (log x)^j / j!
          Json c = Json::array();
          for (int j = 0; j <= lag_n; ++j)
            c.push_back(hardy::json_real(hardy::binomial<R>(lag_n, j) / hardy::factorial<R>(j)));
          out["n"] = lag_n;
          out["log_coeffs"] = std::move(c);
          out["fn"] = hardy::json_of(hardy::laguerre_fn(lag_n, ctx));
        }
        emit(out, st);
        return 0;
      });
    }
    if (*muntz) {
      return hardy::with_precision(st.bits(53), [&]<class R>() {
        const auto ctx = hardy::make_context<R>(o);
        std::vector<hardy::Complex<R>> s;
        if (!muntz_file.empty()) {
          const std::string text = read_text(muntz_file);
          const std::string t = trim(text);
          if (!t.empty() && t[0] == '[') {
            for (const auto& x : Json::parse(t)) s.push_back(hardy::complex_from_json<R>(x));
          } else {
            std::istringstream in(text);
            std::string line;
            while (std::getline(in, line))
              if (!trim(line).empty()) s.push_back(hardy::parse_complex<R>(trim(line)));
          }
        } else if (power > 0) {
          const R p = hardy::num::parse<R>(csv_num(power));
          for (std::size_t k = 1; k <= terms; ++k) s.emplace_back(hardy::num::exp(p * hardy::num::log(R(k))));
        } else {
          throw hardy::domain_error("muntz needs --exponents or --power");
        }
        auto sums = hardy::muntz_partial_sums(s, terms, ctx);
        if (csv) {
          std::ostringstream os;
          os << "k,partial_sum\n";
          for (std::size_t k = 0; k < sums.size(); ++k) os << k + 1 << "," << hardy::num::format(sums[k]) << "\n";
          emit(os.str(), st);
        } else {
          Json arr = Json::array();
          for (const auto& x : sums) arr.push_back(hardy::json_real(x));
          emit(Json{{"terms", sums.size()}, {"partial_sums", arr}}, st);
        }
        return 0;
      });
    }
    if (*pick) {
      return hardy::with_precision(st.bits(53), [&]<class R>() {
        const auto ctx = hardy::make_context<R>(o);
        hardy::PickSystem<R> sys;
        for (const auto& p : split_list(points)) sys.points.push_back(hardy::parse_complex<R>(p));
        for (const auto& v : split_list(values)) sys.values.push_back(hardy::parse_complex<R>(v));
        sys.bound = hardy::num::parse<R>(bound);
        auto a = hardy::pick_matrix(sys, ctx);
        auto rep = hardy::is_psd(a, hardy::default_psd_tol(a, ctx));
        Json out;
        out["psd"] = rep.psd;
        out["min_eigenvalue"] = hardy::json_real(rep.min_eigenvalue);
        out["min_pivot"] = hardy::json_real(rep.min_pivot);
        out["tol"] = hardy::json_real(rep.tol);
        out["matrix"] = hardy::json_of(a);
        emit(out, st);
        return 0;
      });
    }
    if (*scaling) {
      return hardy::with_precision(st.bits(53), [&]<class R>() {
        const auto ctx = hardy::make_context<R>(o);
        auto m = hardy::moments_from_json<R>(load_json(moments));
        if (scaling_n >= 0) {
          if (scaling_n > m.n()) throw hardy::domain_error("--N exceeds the number of moments");
          m.m.resize(scaling_n + 1);
        }
        emit(hardy::json_of(hardy::max_scaling_constant(m, ctx)), st);
        return 0;
      });
    }
    if (*approx) {
      hardy::RunOptions opt;
      opt.bits = st.bits(0);
      opt.escalate = !no_escalate;
      opt.overrides = o;
      Json report = hardy::run_approximation(load_json(subspace), hardy::parse_int_list(nlist),
                                             tests.empty() ? Json() : load_json(tests), opt);
      const std::string table = hardy::report_csv(report);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw std::runtime_error("cannot write " + csv_path);
        f << table;
      }
      if (csv) {
        emit(table, st);
      } else {
        emit(report, st);
      }
      if (!report["failures"].empty()) {
        const std::string kind = report["failures"][0]["kind"].get<std::string>();
        std::cerr << "hardy: " << report["failures"][0]["message"].get<std::string>() << "\n";
        return kind == "ill-conditioned" || kind == "convergence" ? 3 : 2;
      }
      return 0;
    }
    if (*rou) {
      return hardy::with_precision(st.bits(128), [&]<class R>() {
        const auto ctx = hardy::make_context<R>(o);
        const auto s = hardy::parse_complex<R>(rou_s);
        hardy::ExponentMultiset<R> target({{s, rou_m}}, ctx);
        std::vector<R> hs;
        for (const auto& h : split_list(hlist)) hs.push_back(hardy::num::parse<R>(h));
        std::ostringstream os;
        os << "h,n,dist,slope,reverse_gap,reverse_slope\n";
        std::vector<double> gaps;
        for (const auto& h : hs) gaps.push_back(hardy::num::to_double(hardy::subspace_gap(hardy::roots_of_unity_space(s, rou_m, h, ctx), target, ctx)));
        for (int n = 0; n < rou_m; ++n) {
          auto f = hardy::LogMonomialSum<R>::monomial(s, n);
          double prev_d = 0, prev_h = 0;
          for (std::size_t k = 0; k < hs.size(); ++k) {
            const double d = hardy::num::to_double(hardy::dist_to_space(f, hardy::roots_of_unity_space(s, rou_m, hs[k], ctx), ctx));
            const double h = hardy::num::to_double(hs[k]);
            os << csv_num(h) << "," << n << "," << csv_num(d) << ",";
            if (k > 0) os << csv_num(std::log(d / prev_d) / std::log(h / prev_h));
            os << "," << csv_num(gaps[k]) << ",";
            if (k > 0) os << csv_num(std::log(gaps[k] / gaps[k - 1]) / std::log(h / prev_h));
            os << "\n";
            prev_d = d;
            prev_h = h;
          }
        }
        emit(os.str(), st);
        return 0;
      });
    }
    if (*rec) {
      hardy::RunOptions opt;
      opt.bits = st.bits(0);
      opt.overrides = o;
      Json out = hardy::run_recovery(load_json(subspace), extra, opt);
      emit(out, st);
      return out["failures"].empty() ? 0 : 2;
    }
  } catch (const hardy::Error& e) {
    std::cerr << "hardy: " << hardy::to_string(e.kind()) << " error: " << e.what() << "\n";
    return hardy::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "hardy: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
