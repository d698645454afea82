// Command-line laboratory over the library: builds contexts, runs the
// sieve/transfer/arc/moment/search pipelines, and writes machine-readable
// artifacts.  Every run leaves a manifest.json recording the command line,
// the context and plan hashes, and a digest of each artifact; artifacts
// themselves carry no timestamps, so reruns are byte-identical.

#include "wg/circle.hpp"
#include "wg/context.hpp"
#include "wg/local.hpp"
#include "wg/search.hpp"
#include "wg/sieve.hpp"
#include "wg/transfer.hpp"
#include "wg/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using wg::Int;
using wg::Rat;
using wg::u64;

namespace {

constexpr const char* kToolVersion = "wg 1.0.0";

std::string rat_str(const Rat& r) {
  return wg::rat_num(r).convert_to<std::string>() + "/" +
         wg::rat_den(r).convert_to<std::string>();
}

// Exact decimal expansion, rounded half away from zero at the last digit.
std::string rat_decimal(const Rat& r, unsigned digits) {
  Int num = wg::rat_num(r), den = wg::rat_den(r);
  bool neg = num < 0;
  if (neg) num = -num;
  Int scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  Int scaled = (num * scale * 2 + den) / (den * 2);
  Int ip = scaled / scale, fp = scaled % scale;
  std::string f = fp.convert_to<std::string>();
  f.insert(f.begin(), digits - f.size(), '0');
  return (neg ? "-" : "") + ip.convert_to<std::string>() + "." + f;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string iso_utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string int_str(const Int& v) { return v.convert_to<std::string>(); }

// ------------------------------------------------------------ run recording

struct RunLog {
  fs::path dir;
  json manifest;

  RunLog(const std::string& out, int argc, char** argv) : dir(out) {
    fs::create_directories(dir);
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
      if (i) cmd += ' ';
      cmd += argv[i];
    }
    manifest["command_line"] = cmd;
    manifest["tool_version"] = kToolVersion;
    manifest["context_hash"] = "none";
    manifest["plan_hash"] = "none";
    manifest["started_utc"] = iso_utc_now();
    manifest["input_cache_keys"] = json::array();
    manifest["output_digests"] = json::object();
  }

  fs::path write(const std::string& name, const std::string& bytes) {
    fs::path p = dir / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw wg::io_error("cannot write " + p.string());
    f.write(bytes.data(), std::streamsize(bytes.size()));
    if (!f) throw wg::io_error("short write on " + p.string());
    manifest["output_digests"][name] = wg::sha256_hex(bytes);
    return p;
  }

  void finish() {
    manifest["finished_utc"] = iso_utc_now();
    std::ofstream f(dir / "manifest.json", std::ios::binary);
    if (!f) throw wg::io_error("cannot write the run manifest");
    f << manifest.dump(2) << '\n';
  }
};

json plan_json(const wg::SievePlan& plan) {
  json j;
  j["D"] = plan.D;
  j["delta"] = rat_str(plan.delta);
  j["prime_count"] = plan.primes.size();
  j["dplus_size"] = plan.dplus.size();
  if (plan.alpha_plus_value) j["alpha_plus"] = *plan.alpha_plus_value;
  return j;
}

// Prime windows load from WG_CACHE_DIR when the variable is set; misses are
// computed and stored back.  The key lands in the manifest either way.
wg::PrimeWindow cached_primes(u64 lo, u64 hi, RunLog& log) {
  std::string key = "primes-" + std::to_string(lo) + "-" + std::to_string(hi) + ".bin";
  log.manifest["input_cache_keys"].push_back(key);
  const char* dir = std::getenv("WG_CACHE_DIR");
  if (!dir || !*dir) return wg::primes_in(lo, hi);
  fs::path path = fs::path(dir) / key;
  if (fs::exists(path)) {
    wg::PrimeWindow w = wg::prime_window_load(path.string());
    if (w.lo == lo && w.hi == hi) return w;
  }
  wg::PrimeWindow w = wg::primes_in(lo, hi);
  fs::create_directories(dir);
  wg::prime_window_save(w, path.string());
  return w;
}

// ------------------------------------------------------------ context flags

struct CtxFlags {
  unsigned k = 2, s = 7;
  std::string theta = "9/10", eta = "1", x = "100000";
  u64 w_cut = 0;
  std::string b, delta, rho, epsilon;

  void attach(CLI::App* cmd) {
    cmd->add_option("--k", k, "degree, k >= 2")->capture_default_str();
    cmd->add_option("--s", s, "summand count, s >= 3")->capture_default_str();
    cmd->add_option("--theta", theta, "window exponent, rational in (1/2, 1)")
        ->capture_default_str();
    cmd->add_option("--eta", eta, "density parameter, rational in (0, 1]")->capture_default_str();
    cmd->add_option("--x", x, "base scale")->capture_default_str();
    cmd->add_option("--w-cut", w_cut, "small-prime cutoff override; 0 keeps it automatic");
    cmd->add_option("--b", b, "residue class override");
    cmd->add_option("--delta", delta, "sieve exponent override, rational");
    cmd->add_option("--rho", rho, "arc exponent override, rational");
    cmd->add_option("--epsilon", epsilon, "scale-relation tolerance, rational");
  }

  wg::WaringContext build() const {
    wg::ContextOptions o;
    if (w_cut) o.w_override = w_cut;
    if (!b.empty()) o.b_override = Int(b);
    if (!delta.empty()) o.delta_override = wg::rat_from_string(delta);
    if (!rho.empty()) o.rho_override = wg::rat_from_string(rho);
    if (!epsilon.empty()) o.epsilon = wg::rat_from_string(epsilon);
    Int X = wg::floor_rat(wg::rat_from_string(x));
    return wg::build_context(k, s, wg::rat_from_string(theta), wg::rat_from_string(eta), X, o);
  }
};

const char* binding_name(wg::BindingConstraint b) {
  switch (b) {
    case wg::BindingConstraint::minor_arc: return "minor-arc";
    case wg::BindingConstraint::major_arc: return "major-arc";
    default: return "restriction";
  }
}

// ---------------------------------------------------------------- commands

int cmd_thresholds(RunLog& log, unsigned k, unsigned s, bool table) {
  if (!table && k != 0 && s != 0) {
    wg::ThresholdResult t = wg::theta_threshold(k, s);
    std::cout << rat_str(t.theta_bound) << '\n';
    json a;
    a["k"] = k;
    a["s"] = s;
    a["theta"] = rat_str(t.theta_bound);
    a["theta_decimal"] = rat_decimal(t.theta_bound, 6);
    a["binding"] = binding_name(t.binding_constraint);
    a["alpha_minus"] = rat_str(t.alpha_minus_used);
    a["context_hash"] = "none";
    log.write("thresholds.json", a.dump(2) + "\n");
    return 0;
  }
  if (k != 0 || s != 0)
    throw wg::domain_error("thresholds needs both --k and --s, or neither");

  const Rat edge = Rat(21, 40) + Rat(1, 1000000000);
  std::string csv = "# context_hash none\nk,s,theta,theta_decimal,binding,alpha_minus,s_floor\n";
  std::printf("  k     s  theta        decimal   binding      alpha-   s(21/40+)\n");
  for (unsigned kk = 2; kk <= 10; ++kk) {
    unsigned ss = kk == 2 ? 7 : kk == 3 ? 13 : kk * kk + kk + 1;
    wg::ThresholdResult t = wg::theta_threshold(kk, ss);
    u64 sf = wg::s_min(kk, edge);
    std::printf("%3u  %4u  %-11s  %s  %-11s  %-7s  %llu\n", kk, ss,
                rat_str(t.theta_bound).c_str(), rat_decimal(t.theta_bound, 6).c_str(),
                binding_name(t.binding_constraint), rat_str(t.alpha_minus_used).c_str(),
                (unsigned long long)sf);
    csv += std::to_string(kk) + "," + std::to_string(ss) + "," + rat_str(t.theta_bound) + "," +
           rat_decimal(t.theta_bound, 6) + "," + binding_name(t.binding_constraint) + "," +
           rat_str(t.alpha_minus_used) + "," + std::to_string(sf) + "\n";
  }
  std::printf("last column: least s admitting every exponent above 21/40 (= 0.525)\n");
  log.write("thresholds.csv", csv);
  return 0;
}

int cmd_context(RunLog& log, const CtxFlags& flags) {
  wg::WaringContext ctx = flags.build();
  std::string h = wg::context_hash(ctx);
  log.manifest["context_hash"] = h;
  json j = wg::context_to_json(ctx);
  j["context_hash"] = h;
  std::string body = j.dump(2) + "\n";
  log.write("context.json", body);
  std::cout << body;
  return 0;
}

int cmd_local(RunLog& log, u64 q, u64 m, unsigned k, unsigned s, bool witness) {
  wg::LocalCount lc = wg::count_solutions(q, m, k, s, witness);
  json j;
  j["q"] = lc.q;
  j["m"] = lc.m;
  j["k"] = lc.k;
  j["s"] = lc.s;
  j["count"] = int_str(lc.count);
  if (lc.witness)
    j["witness"] = *lc.witness;
  else
    j["witness"] = nullptr;
  j["context_hash"] = "none";
  std::string body = j.dump(2) + "\n";
  log.write("local.json", body);
  std::cout << j.dump() << '\n';
  return 0;
}

int cmd_sieve(RunLog& log, u64 D, u64 scan_to, const std::string& delta) {
  wg::SievePlan plan =
      delta.empty() ? wg::build_plan(D) : wg::build_plan(D, wg::rat_from_string(delta));
  std::string ph = wg::sha256_hex(plan_json(plan).dump());
  log.manifest["plan_hash"] = ph;

  json j = plan_json(plan);
  j["plan_hash"] = ph;
  j["context_hash"] = "none";
  j["scan_to"] = scan_to;

  if (scan_to > 0) {
    std::vector<wg::u8> rough(size_t(scan_to) + 1, 1);
    for (u64 p : plan.primes)
      for (u64 n = p; n <= scan_to; n += p) rough[size_t(n)] = 0;
    std::vector<int> rho = wg::rho_plus_range(1, scan_to, plan);
    std::string csv = "# context_hash none\n# plan_hash " + ph + "\nn,rough,rho_plus\n";
    for (u64 n = 1; n <= scan_to; ++n) {
      csv += std::to_string(n);
      csv += rough[size_t(n)] ? ",1," : ",0,";
      csv += std::to_string(rho[size_t(n - 1)]);
      csv += '\n';
    }
    log.write("sieve_scan.csv", csv);
    j["scan_file"] = "sieve_scan.csv";
  }
  log.write("sieve.json", j.dump(2) + "\n");
  std::cout << "D=" << plan.D << " primes=" << plan.primes.size()
            << " dplus=" << plan.dplus.size() << " scan_rows=" << scan_to << '\n';
  return 0;
}

int cmd_transfer(RunLog& log, const CtxFlags& flags, const std::string& kind_name) {
  wg::SeqKind kind;
  if (kind_name == "f")
    kind = wg::SeqKind::f_b;
  else if (kind_name == "nu")
    kind = wg::SeqKind::nu_b;
  else
    throw wg::domain_error("transfer --kind must be f or nu");

  wg::WaringContext ctx = flags.build();
  std::string h = wg::context_hash(ctx);
  log.manifest["context_hash"] = h;
  wg::SievePlan plan = wg::plan_for_context(ctx);
  log.manifest["plan_hash"] = wg::sha256_hex(plan_json(plan).dump());

  wg::WeightedSequence seq = wg::build_sequence(ctx, plan, kind);
  std::string blob = wg::sequence_encode(seq);
  log.write("sequence.bin", blob);

  json side;
  side["context_hash"] = h;
  side["kind"] = kind_name;
  side["normalizer"] = seq.normalizer;
  side["support_size"] = seq.support_size();
  side["length"] = int_str(seq.length);
  side["b"] = int_str(seq.b);
  side["sieve_level"] = seq.sieve_level;
  side["sum"] = seq.sum();
  side["layout"] = seq.length <= (Int(1) << 20) ? "dense" : "support";
  side["data_file"] = "sequence.bin";
  side["data_digest"] = wg::sha256_hex(blob);
  log.write("sequence.json", side.dump(2) + "\n");

  std::cout << "kind=" << kind_name << " N=" << seq.length << " support=" << seq.support_size()
            << " normalizer=" << g17(seq.normalizer) << " sum=" << g17(seq.sum())
            << " -> sequence.bin sequence.json\n";
  return 0;
}

int cmd_arcs(RunLog& log, const CtxFlags& flags, u64 M, u64 samples, u64 qcap, u64 seed) {
  wg::WaringContext ctx = flags.build();
  std::string h = wg::context_hash(ctx);
  log.manifest["context_hash"] = h;
  wg::SievePlan plan = wg::plan_for_context(ctx);
  std::string ph = wg::sha256_hex(plan_json(plan).dump());
  log.manifest["plan_hash"] = ph;

  wg::ArcScanReport rep = wg::pseudorandomness_report(ctx, plan, ctx.b, M, samples, qcap, seed);

  std::string csv = "# context_hash " + h + "\n# plan_hash " + ph +
                    "\nj,alpha,class,q,a,abs_nu_hat_minus_box_over_N\n";
  for (const wg::ArcScanRow& row : rep.rows) {
    csv += std::to_string(row.j) + "," + g17(double(row.j) / double(rep.M)) + "," +
           (row.major ? "major" : "minor") + "," + std::to_string(row.q) + "," +
           std::to_string(row.a) + "," + g17(row.discrepancy) + "\n";
  }
  log.write("arcs.csv", csv);

  json j;
  j["context_hash"] = h;
  j["M"] = rep.M;
  j["N"] = int_str(rep.N);
  j["Q"] = int_str(rep.Q);
  j["T"] = rat_str(rep.T);
  j["gap_at_zero"] = rep.gap_at_zero;
  j["sup_minor"] = rep.sup_minor;
  j["sup_minor_j"] = rep.sup_minor_j;
  j["sup_major_qgt1"] = rep.sup_major_qgt1;
  j["sup_major_j"] = rep.sup_major_j;
  j["minor_points"] = rep.minor_points;
  j["major_points"] = rep.major_points;
  j["samples"] = samples;
  j["major_q_cap"] = qcap;
  j["seed"] = seed;
  log.write("arcs.json", j.dump(2) + "\n");

  std::cout << "M=" << rep.M << " minor=" << rep.minor_points << " major=" << rep.major_points
            << " sup_minor=" << g17(rep.sup_minor)
            << " sup_major_qgt1=" << g17(rep.sup_major_qgt1)
            << " gap_at_zero=" << g17(rep.gap_at_zero) << " -> arcs.csv arcs.json\n";
  return 0;
}

int cmd_moments(RunLog& log, const CtxFlags& flags, unsigned u, u64 grid,
                const std::string& kind_name) {
  if (u < 2 || u % 2 != 0) throw wg::domain_error("moments needs a positive even --u");
  wg::SeqKind kind;
  if (kind_name == "f")
    kind = wg::SeqKind::f_b;
  else if (kind_name == "nu")
    kind = wg::SeqKind::nu_b;
  else
    throw wg::domain_error("moments --kind must be f or nu");

  wg::WaringContext ctx = flags.build();
  std::string h = wg::context_hash(ctx);
  log.manifest["context_hash"] = h;
  wg::SievePlan plan = wg::plan_for_context(ctx);
  log.manifest["plan_hash"] = wg::sha256_hex(plan_json(plan).dump());

  wg::WeightedSequence seq = wg::build_sequence(ctx, plan, kind);
  wg::MomentNorm mn = wg::moment_norm(seq, u, grid);

  // Second path in sequence space: energy of the t-fold self-convolution,
  // the weighted count of solution pairs the grid moment measures.
  unsigned t = u / 2;
  u64 N = wg::to_u64(seq.length, "N");
  std::optional<double> direct;
  if (double(N) * t <= 8000000.0) {
    std::vector<double> f(size_t(N) + 1, 0.0);
    for (size_t i = 0; i < seq.support_n.size(); ++i)
      f[size_t(seq.support_n[i])] = seq.support_v[i];
    wg::kahan energy;
    if (t == 1) {
      for (double v : seq.support_v) energy.add(v * v);
    } else {
      std::vector<double> conv = wg::convolve(std::vector<std::vector<double>>(t, f));
      for (double c : conv) energy.add(c * c);
    }
    direct = energy.value();
  }

  json j;
  j["context_hash"] = h;
  j["kind"] = kind_name;
  j["u"] = u;
  j["grid"] = mn.grid;
  j["transform_value"] = mn.value;
  j["transform_ratio"] = mn.ratio;
  if (direct) {
    j["convolution_value"] = *direct;
    j["rel_gap"] = std::abs(mn.value - *direct) / std::max(1.0, std::abs(*direct));
  } else {
    j["convolution_value"] = nullptr;
    j["rel_gap"] = nullptr;
  }
  log.write("moments.json", j.dump(2) + "\n");

  std::cout << "u=" << u << " grid=" << mn.grid << " transform=" << g17(mn.value);
  if (direct)
    std::cout << " convolution=" << g17(*direct)
              << " rel_gap=" << g17(j["rel_gap"].get<double>());
  else
    std::cout << " convolution=skipped(scale)";
  std::cout << '\n';
  return 0;
}

int cmd_search(RunLog& log, unsigned k, unsigned s, const std::string& theta_s,
               const std::string& x_s, const std::vector<std::string>& ns,
               const std::string& n_mod, unsigned count, unsigned threads) {
  Rat theta = wg::rat_from_string(theta_s);
  if (!(theta > Rat(1, 2) && theta < 1))
    throw wg::domain_error("search needs theta in (1/2, 1)");
  Int X = wg::floor_rat(wg::rat_from_string(x_s));
  if (X < 16) throw wg::domain_error("search needs x >= 16");
  if (s < 2) throw wg::domain_error("search needs s >= 2");

  double xd = X.convert_to<double>();
  double half = std::pow(xd, wg::to_double(theta));
  double lo_d = std::ceil(xd - half / double(s));
  u64 lo = lo_d < 2.0 ? 2 : u64(lo_d);
  u64 hi = u64(std::floor(xd + half));
  if (hi < lo) throw wg::domain_error("search window is empty at this scale");

  std::vector<Int> targets;
  for (const std::string& n : ns) targets.push_back(Int(n));
  if (!n_mod.empty()) {
    auto colon = n_mod.find(':');
    if (colon == std::string::npos)
      throw wg::domain_error("--n-mod expects modulus:residue");
    Int M(n_mod.substr(0, colon)), R(n_mod.substr(colon + 1));
    if (M < 1 || R < 0 || R >= M) throw wg::domain_error("--n-mod needs 0 <= residue < modulus");
    Int xk = 1;
    for (unsigned i = 0; i < k; ++i) xk *= X;
    Int center = Int(s) * xk;
    Int first = center + (((R - center) % M + M) % M);
    for (unsigned i = 0; i < count; ++i) targets.push_back(first + Int(i) * M);
  }
  if (targets.empty()) throw wg::domain_error("search needs --n or --n-mod targets");

  wg::PrimeWindow pw = cached_primes(lo, hi, log);
  auto recs = wg::find_representation_batch(targets, k, s, pw, threads);

  std::ostringstream out;
  json header;
  header["record"] = "header";
  header["k"] = k;
  header["s"] = s;
  header["window_lo"] = lo;
  header["window_hi"] = hi;
  header["window_primes"] = pw.primes.size();
  header["context_hash"] = "none";
  out << header.dump() << '\n';
  unsigned found = 0;
  for (const wg::RepresentationRecord& r : recs) {
    json line;
    line["record"] = "representation";
    line["n"] = int_str(r.n);
    line["found"] = r.found;
    line["method"] =
        r.method == wg::RepMethod::meet_in_middle ? "meet-in-middle" : "exhaustive";
    line["primes"] = r.primes;
    out << line.dump() << '\n';
    if (r.found) ++found;
  }
  std::string body = out.str();
  log.write("search.jsonl", body);
  std::cout << body;
  std::cerr << "found " << found << "/" << recs.size() << " in window [" << lo << ", " << hi
            << "]\n";
  return 0;
}

int cmd_verify_all(RunLog& log, const std::string& profile) {
  if (profile != "desk")
    throw wg::domain_error("unknown profile: " + profile + " (only desk is available)");
  int failures = 0;
  auto print = [&](const wg::CriterionResult& r) {
    if (!r.passed()) ++failures;
    std::printf("criterion %2d: %s  %s  (%.2f s, budget %.0f s)\n", r.id,
                r.passed() ? "PASS" : "FAIL", r.label.c_str(), r.seconds, r.budget_s);
    if (!r.in_budget) std::printf("    over time budget\n");
    std::istringstream lines(r.detail);
    std::string line;
    while (std::getline(lines, line))
      if (!line.empty()) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
  };
  std::vector<wg::CriterionResult> results = wg::acceptance_suite(print);
  json arr = json::array();
  for (const wg::CriterionResult& r : results) {
    json j;
    j["id"] = r.id;
    j["label"] = r.label;
    j["budget_s"] = r.budget_s;
    j["seconds"] = r.seconds;
    j["ok"] = r.ok;
    j["in_budget"] = r.in_budget;
    j["passed"] = r.passed();
    j["detail"] = r.detail;
    arr.push_back(j);
  }
  json top;
  top["profile"] = profile;
  top["failures"] = failures;
  top["criteria"] = arr;
  top["context_hash"] = "none";
  log.write("verify.json", top.dump(2) + "\n");
  std::printf(failures == 0 ? "all criteria passed\n" : "%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

// --------------------------------------------------------------- dispatch

int guarded(RunLog& log, const std::function<int()>& body) {
  try {
    int rc = body();
    log.finish();
    return rc;
  } catch (const wg::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    log.manifest["error"] = {{"type", "domain"}, {"message", e.what()}};
    log.finish();
    return 2;
  } catch (const std::exception& e) {
    const char* type = dynamic_cast<const wg::scale_error*>(&e)   ? "scale"
                       : dynamic_cast<const wg::io_error*>(&e)    ? "io"
                                                                  : "internal";
    json err;
    err["error"] = {{"type", type}, {"message", e.what()}};
    std::cout << err.dump() << '\n';
    log.manifest["error"] = err["error"];
    log.finish();
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"short-interval sums of prime powers: contexts, sieves, arcs, and searches"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "key=value configuration file; command-line flags win");

  std::string out_dir = "wg-out";
  unsigned threads = 1;
  u64 seed = 1234;
  app.add_option("--out", out_dir, "artifact directory")->capture_default_str();
  app.add_option("--threads", threads, "worker threads for batch work")->capture_default_str();
  app.add_option("--seed", seed, "seed for sampled scans")->capture_default_str();

  // thresholds
  CLI::App* c_thr = app.add_subcommand("thresholds", "admissible exponent bounds");
  unsigned thr_k = 0, thr_s = 0;
  bool thr_table = false;
  c_thr->add_option("--k", thr_k, "degree");
  c_thr->add_option("--s", thr_s, "summand count");
  c_thr->add_flag("--table", thr_table, "print the headline table");

  // context
  CLI::App* c_ctx = app.add_subcommand("context", "resolve and print a full context");
  CtxFlags ctx_flags;
  ctx_flags.attach(c_ctx);

  // local
  CLI::App* c_loc = app.add_subcommand("local", "exact unit solution counts mod q");
  u64 loc_q = 0, loc_m = 0;
  unsigned loc_k = 2, loc_s = 3;
  bool loc_wit = false;
  c_loc->add_option("--q", loc_q, "modulus")->required();
  c_loc->add_option("--m", loc_m, "target residue")->capture_default_str();
  c_loc->add_option("--k", loc_k, "degree")->capture_default_str();
  c_loc->add_option("--s", loc_s, "summand count")->capture_default_str();
  c_loc->add_flag("--witness", loc_wit, "also produce one solution when the count is positive");

  // sieve
  CLI::App* c_sieve = app.add_subcommand("sieve", "upper-bound sieve weights");
  u64 sv_D = 0, sv_scan = 0;
  std::string sv_delta;
  c_sieve->add_option("--D", sv_D, "sieve level")->required();
  c_sieve->add_option("--scan-to", sv_scan, "emit weights for n = 1..this")->capture_default_str();
  c_sieve->add_option("--delta", sv_delta, "record the exponent the level came from, rational");

  // transfer
  CLI::App* c_tr = app.add_subcommand("transfer", "normalized weighted sequences");
  CtxFlags tr_flags;
  tr_flags.x = "700";
  tr_flags.attach(c_tr);
  std::string tr_kind = "f";
  c_tr->add_option("--kind", tr_kind, "f (prime-power indicator) or nu (sieve majorant)")
      ->capture_default_str();

  // arcs
  CLI::App* c_arc = app.add_subcommand("arcs", "sampled transform scan with arc classes");
  CtxFlags arc_flags;
  arc_flags.attach(c_arc);
  u64 arc_M = 0, arc_samples = 1024, arc_qcap = 40;
  c_arc->add_option("--scan", arc_M, "frequency grid size; 0 picks the aliasing-safe default")
      ->capture_default_str();
  c_arc->add_option("--samples", arc_samples, "random minor-arc sample count")
      ->capture_default_str();
  c_arc->add_option("--q-cap", arc_qcap, "probe grid points near fractions with q up to this")
      ->capture_default_str();

  // moments
  CLI::App* c_mom = app.add_subcommand("moments", "even moments of the grid transform");
  CtxFlags mom_flags;
  mom_flags.x = "700";
  mom_flags.attach(c_mom);
  unsigned mom_u = 2;
  u64 mom_grid = 0;
  std::string mom_kind = "f";
  c_mom->add_option("--u", mom_u, "even moment order")->capture_default_str();
  c_mom->add_option("--grid", mom_grid, "transform grid size; 0 picks the default")
      ->capture_default_str();
  c_mom->add_option("--kind", mom_kind, "f or nu")->capture_default_str();

  // search
  CLI::App* c_se = app.add_subcommand("search", "representations by primes in one window");
  unsigned se_k = 2, se_s = 7;
  std::string se_theta = "9/10", se_x = "2000", se_nmod;
  std::vector<std::string> se_ns;
  unsigned se_count = 5;
  c_se->add_option("--k", se_k, "degree")->capture_default_str();
  c_se->add_option("--s", se_s, "summand count")->capture_default_str();
  c_se->add_option("--theta", se_theta, "window exponent, rational in (1/2, 1)")
      ->capture_default_str();
  c_se->add_option("--x", se_x, "window center scale")->capture_default_str();
  c_se->add_option("--n", se_ns, "explicit target, repeatable");
  c_se->add_option("--n-mod", se_nmod, "modulus:residue; targets start at s*x^k in the class");
  c_se->add_option("--count", se_count, "number of --n-mod targets")->capture_default_str();

  // verify-all
  CLI::App* c_ver = app.add_subcommand("verify-all", "run the full acceptance suite");
  std::string ver_profile = "desk";
  c_ver->add_option("--profile", ver_profile, "scale profile")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunLog log(out_dir, argc, argv);
  log.manifest["seed"] = seed;
  log.manifest["threads"] = threads;

  if (app.got_subcommand(c_thr))
    return guarded(log, [&] { return cmd_thresholds(log, thr_k, thr_s, thr_table); });
  if (app.got_subcommand(c_ctx))
    return guarded(log, [&] { return cmd_context(log, ctx_flags); });
  if (app.got_subcommand(c_loc))
    return guarded(log, [&] { return cmd_local(log, loc_q, loc_m, loc_k, loc_s, loc_wit); });
  if (app.got_subcommand(c_sieve))
    return guarded(log, [&] { return cmd_sieve(log, sv_D, sv_scan, sv_delta); });
  if (app.got_subcommand(c_tr))
    return guarded(log, [&] { return cmd_transfer(log, tr_flags, tr_kind); });
  if (app.got_subcommand(c_arc))
    return guarded(log,
                   [&] { return cmd_arcs(log, arc_flags, arc_M, arc_samples, arc_qcap, seed); });
  if (app.got_subcommand(c_mom))
    return guarded(log, [&] { return cmd_moments(log, mom_flags, mom_u, mom_grid, mom_kind); });
  if (app.got_subcommand(c_se))
    return guarded(log, [&] {
      return cmd_search(log, se_k, se_s, se_theta, se_x, se_ns, se_nmod, se_count, threads);
    });
  if (app.got_subcommand(c_ver))
    return guarded(log, [&] { return cmd_verify_all(log, ver_profile); });

  std::cerr << "no subcommand selected\n";
  return 2;
}
