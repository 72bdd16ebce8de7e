// tdc: orbit matrices -> designs -> ternary self-dual codes -> measurements.
//
// Subcommands: generate-om, expand, build-code, analyze, classify-equiv,
// verify-paper. Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tdc/equivalence.hpp"
#include "tdc/gamma_tables.hpp"
#include "tdc/indexer.hpp"
#include "tdc/io.hpp"
#include "tdc/manifest.hpp"
#include "tdc/orbit_matrix.hpp"
#include "tdc/verify.hpp"
#include "tdc/weight.hpp"

namespace fs = std::filesystem;
using namespace tdc;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string zero_pad(long long x, int width) {
  std::string s = std::to_string(x);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

void write_output(pipeline::RunManifest& man, const fs::path& path, const std::string& content) {
  io::write_file(path.string(), content);
  man.outputs.push_back({path.filename().string(), pipeline::sha256_hex(content)});
}

void add_input(pipeline::RunManifest& man, const std::string& path) {
  man.inputs.push_back({path, pipeline::sha256_hex(io::read_file(path))});
}

void finish_manifest(pipeline::RunManifest& man, const fs::path& out_dir, const Timer& timer) {
  man.wall_time_s = timer.seconds();
  io::write_file((out_dir / "manifest.json").string(), man.to_json());
}

std::vector<int> parse_size_list(const std::string& csv) {
  std::vector<int> out;
  std::istringstream is(csv);
  std::string item;
  while (std::getline(is, item, ',')) out.push_back(std::stoi(item));
  return out;
}

int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// ---- generate-om ---------------------------------------------------------------

int cmd_generate_om(const design::DesignParams& params, int group_order, const std::string& sizes_csv,
                    const std::string& out_dir) {
  Timer timer;
  fs::create_directories(out_dir);
  std::vector<int> sizes = parse_size_list(sizes_csv);
  auto census = om::generate_orbit_matrices(params, group_order, sizes, sizes);

  pipeline::RunManifest man;
  man.command = "generate-om";
  man.parameters = {{"v", std::to_string(params.v)},
                    {"k", std::to_string(params.k)},
                    {"lambda", std::to_string(params.lambda)},
                    {"group_order", std::to_string(group_order)},
                    {"orbit_sizes", sizes_csv}};

  for (std::size_t i = 0; i < census.size(); ++i)
    write_output(man, fs::path(out_dir) / ("om_" + zero_pad(static_cast<long long>(i) + 1, 3) + ".txt"),
                 io::format_orbit_matrix(census[i]));
  man.counts["orbit_matrices"] = static_cast<long long>(census.size());

  // bundled-matrix membership, reported for the paper's parameter set
  if (params.v == 47 && params.k == 23 && params.lambda == 11 && group_order == 6) {
    std::set<std::vector<int>> keys;
    for (const auto& m : census) keys.insert(m.s);
    int present = 0;
    for (int id = 1; id <= 4; ++id)
      present += keys.count(om::canonical_orbit_matrix(om::load_appendix(id)).s) ? 1 : 0;
    man.counts["bundled_matrices_present"] = present;
    std::cout << "bundled matrices present: " << present << "/4\n";
    if (census.size() != 32)
      std::cout << "note: census size " << census.size()
                << " differs from the published 32 (equivalence notion there is unstated)\n";
  }
  finish_manifest(man, out_dir, timer);
  std::cout << "orbit matrices: " << census.size() << " -> " << out_dir << "\n";
  return 0;
}

// ---- expand --------------------------------------------------------------------

int cmd_expand(const std::string& om_file, int appendix_id, long long limit, long long skip,
               bool reject, int threads, double budget_seconds, const std::string& out_dir) {
  Timer timer;
  fs::create_directories(out_dir);

  pipeline::RunManifest man;
  man.command = "expand";
  om::OrbitMatrix m;
  std::string source;
  if (appendix_id > 0) {
    m = om::load_appendix(appendix_id);
    source = "bundled:" + std::to_string(appendix_id);
  } else {
    m = io::parse_orbit_matrix(io::read_file(om_file));
    add_input(man, om_file);
    source = om_file;
  }
  man.parameters = {{"source", source},
                    {"limit", std::to_string(limit)},
                    {"skip", std::to_string(skip)},
                    {"isomorph_reject", reject ? "1" : "0"},
                    {"threads", std::to_string(threads)}};

  indexer::ExpandOptions eo;
  eo.limit = limit;
  eo.skip = skip;
  eo.threads = reject ? 1 : threads;  // with rejection, threads go to canonization

  long long written = 0, raw = 0;
  std::ostringstream provenance;
  indexer::IsomorphRejector rejector;
  bool budget_hit = false;

  auto write_design = [&](const indexer::ExpansionResult& res) {
    ++written;
    std::string name = "design_" + zero_pad(written, 5) + ".txt";
    write_output(man, fs::path(out_dir) / name,
                 io::format_design({res.incidence, m.params}));
    provenance << name << " om=" << source << " choice=";
    for (std::size_t c = 0; c < res.choice.size(); ++c)
      provenance << (c ? " " : "") << res.choice[c];
    provenance << "\n";
  };

  indexer::expand(m, eo, [&](indexer::ExpansionResult res) {
    ++raw;
    if (!reject || rejector.insert(res.incidence)) write_design(res);
    if (budget_seconds > 0 && timer.seconds() > budget_seconds) {
      budget_hit = true;
      return false;
    }
    return true;
  });

  write_output(man, fs::path(out_dir) / "provenance.txt", provenance.str());
  man.counts["raw"] = raw;
  man.counts["written"] = written;
  if (budget_hit) {
    std::string token = std::to_string(skip + raw);
    io::write_file((fs::path(out_dir) / "resume.txt").string(),
                   "budget exhausted; rerun with --skip " + token + "\n");
    man.parameters["resume_skip"] = token;
    std::cout << "budget exhausted after " << raw << " results; resume with --skip " << token << "\n";
  }
  finish_manifest(man, out_dir, timer);
  std::cout << "designs written: " << written << (reject ? " (isomorph-reduced)" : "") << " -> "
            << out_dir << "\n";
  return 0;
}

// ---- build-code ----------------------------------------------------------------

int cmd_build_code(const std::vector<std::string>& design_files, const std::string& out_dir) {
  Timer timer;
  fs::create_directories(out_dir);
  pipeline::RunManifest man;
  man.command = "build-code";
  man.parameters = {{"designs", std::to_string(design_files.size())}};
  for (std::size_t i = 0; i < design_files.size(); ++i) {
    add_input(man, design_files[i]);
    io::DesignFile df = io::parse_design(io::read_file(design_files[i]));
    code::TernaryCode c = code::code_from_design(df.incidence, df.params);
    write_output(man, fs::path(out_dir) / ("code_" + zero_pad(static_cast<long long>(i) + 1, 5) + ".txt"),
                 io::format_code(c));
  }
  man.counts["codes"] = static_cast<long long>(design_files.size());
  finish_manifest(man, out_dir, timer);
  std::cout << "codes written: " << design_files.size() << " -> " << out_dir << "\n";
  return 0;
}

// ---- analyze -------------------------------------------------------------------

void parallel_indices(int threads, std::size_t count, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

int cmd_analyze(const std::vector<std::string>& design_files, const std::string& format, int threads,
                const std::string& out_dir) {
  Timer timer;
  fs::create_directories(out_dir);
  pipeline::RunManifest man;
  man.command = "analyze";
  man.parameters = {{"format", format}, {"designs", std::to_string(design_files.size())}};

  std::vector<weight::WeightReport> reports(design_files.size());
  parallel_indices(threads, design_files.size(), [&](std::size_t i) {
    io::DesignFile df = io::parse_design(io::read_file(design_files[i]));
    code::TernaryCode c = code::code_from_design(df.incidence, df.params);
    reports[i] = weight::classify(c);
  });

  std::set<long long> betas;
  std::map<std::string, long long> by_class;
  for (std::size_t i = 0; i < design_files.size(); ++i) {
    add_input(man, design_files[i]);
    std::string name = "report_" + zero_pad(static_cast<long long>(i) + 1, 5);
    if (format == "json")
      write_output(man, fs::path(out_dir) / (name + ".json"), io::weight_report_json(reports[i]));
    else
      write_output(man, fs::path(out_dir) / (name + ".txt"), io::format_weight_report(reports[i]));
    ++by_class[weight::to_string(reports[i].classification)];
    if (reports[i].beta >= 0) betas.insert(reports[i].beta);
  }

  std::ostringstream agg;
  agg << "codes=" << design_files.size() << '\n';
  for (const auto& [cls, cnt] : by_class) agg << cls << '=' << cnt << '\n';
  agg << "distinct_beta=" << betas.size() << '\n';
  agg << "beta_set=";
  bool first = true;
  for (long long b : betas) {
    if (!first) agg << ',';
    agg << b;
    first = false;
  }
  agg << '\n';
  write_output(man, fs::path(out_dir) / "aggregate.txt", agg.str());
  for (const auto& [cls, cnt] : by_class) man.counts["class_" + cls] = cnt;
  man.counts["distinct_beta"] = static_cast<long long>(betas.size());
  finish_manifest(man, out_dir, timer);
  std::cout << agg.str();
  return 0;
}

// ---- classify-equiv ------------------------------------------------------------

int cmd_classify_equiv(const std::vector<std::string>& code_files, int threads,
                       const std::string& out_dir) {
  Timer timer;
  fs::create_directories(out_dir);
  pipeline::RunManifest man;
  man.command = "classify-equiv";
  man.parameters = {{"codes", std::to_string(code_files.size())}};

  std::vector<code::TernaryCode> codes(code_files.size());
  std::vector<int> dmin(code_files.size());
  std::vector<std::string> fp(code_files.size());
  parallel_indices(threads, code_files.size(), [&](std::size_t i) {
    codes[i] = io::parse_code(io::read_file(code_files[i]));
    dmin[i] = weight::min_weight(codes[i]);
    fp[i] = equiv::fingerprint_from(codes[i], equiv::code_supports(codes[i], dmin[i])).key();
  });
  for (const auto& f : code_files) add_input(man, f);

  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < codes.size(); ++i) buckets[fp[i]].push_back(i);

  std::vector<long long> class_of(codes.size(), -1);
  long long classes = 0;
  for (const auto& [key, members] : buckets) {
    std::vector<equiv::CodeSupports> sup(members.size());
    parallel_indices(threads, members.size(), [&](std::size_t i) {
      sup[i] = equiv::code_supports(codes[members[i]], dmin[members[i]]);
    });
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < members.size(); ++i) {
      long long cls = -1;
      for (std::size_t r : reps)
        if (equiv::monomially_equivalent(codes[members[r]], sup[r], codes[members[i]], sup[i])) {
          cls = class_of[members[r]];
          break;
        }
      if (cls < 0) {
        cls = classes++;
        reps.push_back(i);
      }
      class_of[members[i]] = cls;
    }
  }

  std::ostringstream out;
  out << "codes=" << codes.size() << '\n' << "classes=" << classes << '\n';
  for (std::size_t i = 0; i < codes.size(); ++i)
    out << code_files[i] << " class=" << class_of[i] << '\n';
  write_output(man, fs::path(out_dir) / "classes.txt", out.str());
  man.counts["classes"] = classes;
  finish_manifest(man, out_dir, timer);
  std::cout << "codes=" << codes.size() << " classes=" << classes << " -> " << out_dir << "\n";
  return 0;
}

// ---- verify-paper --------------------------------------------------------------

int cmd_verify(const std::string& tier, int threads, bool quiet) {
  verify::Options vo;
  vo.threads = threads;
  if (!quiet) vo.progress = &std::cerr;
  std::vector<verify::CriterionResult> results =
      tier == "full" ? verify::run_full(vo) : verify::run_fast(vo);
  for (const auto& r : results)
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name << " — "
              << r.detail << "\n";
  bool ok = verify::all_pass(results);
  std::cout << (ok ? "verification passed" : "verification FAILED") << " (" << results.size()
            << " criteria, tier " << tier << ")\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ternary design codes: orbit matrices, designs, self-dual [48,24] codes"};
  app.require_subcommand(1);
  int threads = default_threads();
  app.add_option("--threads", threads, "worker threads (default: available parallelism)");

  // generate-om
  auto* gen = app.add_subcommand("generate-om", "generate all orbit matrices for a parameter set");
  design::DesignParams params{47, 23, 11};
  int group_order = 6;
  std::string sizes_csv = "1,2,2,3,3,6,6,6,6,6,6";
  std::string gen_out = "om-out";
  gen->add_option("--v", params.v, "points");
  gen->add_option("--k", params.k, "block size");
  gen->add_option("--lambda", params.lambda, "pair count");
  gen->add_option("--group-order", group_order, "automorphism order");
  gen->add_option("--orbit-sizes", sizes_csv, "comma-separated orbit sizes");
  gen->add_option("--out-dir", gen_out, "output directory");

  // expand
  auto* exp = app.add_subcommand("expand", "expand an orbit matrix into designs");
  std::string om_file;
  int appendix_id = 0;
  long long limit = -1, skip = 0;
  bool reject = false;
  double budget_seconds = 0;
  std::string exp_out = "designs-out";
  exp->add_option("--om", om_file, "orbit matrix file");
  exp->add_option("--appendix", appendix_id, "bundled orbit matrix id (1..4)");
  exp->add_option("--limit", limit, "stop after this many designs");
  exp->add_option("--skip", skip, "skip this many leading designs (resume)");
  exp->add_flag("--isomorph-reject", reject, "keep one design per isomorphism class");
  exp->add_option("--budget-seconds", budget_seconds, "wall-clock budget; emits a resume token");
  exp->add_option("--out-dir", exp_out, "output directory");

  // build-code
  auto* bc = app.add_subcommand("build-code", "build ternary codes from design files");
  std::vector<std::string> design_files;
  std::string bc_out = "codes-out";
  bc->add_option("designs", design_files, "design files")->required();
  bc->add_option("--out-dir", bc_out, "output directory");

  // analyze
  auto* an = app.add_subcommand("analyze", "measure codes of designs and aggregate beta values");
  std::vector<std::string> an_files;
  std::string format = "text";
  std::string an_out = "reports-out";
  an->add_option("designs", an_files, "design files")->required();
  an->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));
  an->add_option("--out-dir", an_out, "output directory");

  // classify-equiv
  auto* ce = app.add_subcommand("classify-equiv", "partition codes into monomial equivalence classes");
  std::vector<std::string> code_files;
  std::string ce_out = "classes-out";
  ce->add_option("codes", code_files, "code files")->required();
  ce->add_option("--out-dir", ce_out, "output directory");

  // verify-paper
  auto* vp = app.add_subcommand("verify-paper", "run the verification suite");
  std::string tier = "fast";
  bool quiet = false;
  vp->add_option("--tier", tier, "fast|full")->check(CLI::IsMember({"fast", "full"}));
  vp->add_flag("--quiet", quiet, "suppress progress logging");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate_om(params, group_order, sizes_csv, gen_out);
    if (exp->parsed()) {
      if (om_file.empty() && appendix_id == 0) {
        std::cerr << "expand: need --om FILE or --appendix ID\n";
        return 2;
      }
      return cmd_expand(om_file, appendix_id, limit, skip, reject, threads, budget_seconds, exp_out);
    }
    if (bc->parsed()) return cmd_build_code(design_files, bc_out);
    if (an->parsed()) return cmd_analyze(an_files, format, threads, an_out);
    if (ce->parsed()) return cmd_classify_equiv(code_files, threads, ce_out);
    if (vp->parsed()) return cmd_verify(tier, threads, quiet);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
