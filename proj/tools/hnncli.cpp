// Command-line surface for the HNN toolkit: word algebra, canonical
// forms, region classification, Cayley balls, depth witnesses, homotopy
// certificates and oracle queries, with machine-readable output.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 a
// semi-decision returned Unknown.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hnn/ball.hpp"
#include "hnn/depth.hpp"
#include "hnn/homotopy.hpp"
#include "hnn/regions.hpp"
#include "hnn/stallings.hpp"

using namespace hnn;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kInputError = 2;
constexpr int kUnknown = 3;

struct Options {
  std::string presentation_path;
  std::string format = "text";
  std::string out_path;
  SearchBudget budget;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) throw InputError("cannot open output file " + opt.out_path);
    out << text;
  }
}

HnnPresentation load_presentation(const Options& opt) {
  if (opt.presentation_path.empty())
    throw InputError("a presentation file is required (-p FILE)");
  return HnnPresentation::load(opt.presentation_path);
}

std::string show_word(const Word& w) { return w.empty() ? "" : w.str(); }

int exit_for(Tri t) { return t == Tri::Unknown ? kUnknown : kOk; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hnnkit: combinatorics of ascending HNN extensions"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("-p,--presentation", opt.presentation_path,
                 "presentation JSON file");
  app.add_option("--format", opt.format, "output format: text|json|dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("-o,--out", opt.out_path, "write output to a file");
  app.add_option("--budget-imax", opt.budget.i_max, "relator iterate bound");
  app.add_option("--budget-conj", opt.budget.conj_len, "conjugator length bound");
  app.add_option("--budget-factors", opt.budget.max_factors, "factor count bound");
  app.add_option("--budget-nodes", opt.budget.node_budget, "search node budget");

  // ---- reduce
  std::string word_arg;
  auto* c_reduce = app.add_subcommand("reduce", "freely reduce a word");
  c_reduce->add_option("word", word_arg)->required();

  // ---- endo
  int endo_k = 1;
  auto* c_endo = app.add_subcommand("endo", "apply phi^k to a base word");
  c_endo->add_option("word", word_arg)->required();
  c_endo->add_option("-k,--iterate", endo_k, "how many times to apply phi");

  // ---- canon
  auto* c_canon = app.add_subcommand("canon", "Britton canonical form");
  c_canon->add_option("word", word_arg)->required();

  // ---- equal
  std::string word_arg2;
  auto* c_equal = app.add_subcommand("equal", "equality in G");
  c_equal->add_option("u", word_arg)->required();
  c_equal->add_option("v", word_arg2)->required();

  // ---- classify
  long opt_N = 0, opt_M = 0;
  auto* c_classify = app.add_subcommand("classify", "region of a vertex");
  c_classify->add_option("word", word_arg)->required();
  c_classify->add_option("-N", opt_N)->required();
  c_classify->add_option("-M", opt_M)->required();

  // ---- ball
  int radius = 2;
  auto* c_ball = app.add_subcommand("ball", "Cayley 2-complex ball");
  c_ball->add_option("--radius", radius, "BFS radius")->required();

  // ---- depth
  std::string depth_word;
  int depth_level = 1;
  std::vector<int> scan_args;
  int probe_samples = 0;
  auto* c_depth = app.add_subcommand("depth", "depth chain witnesses");
  c_depth->add_option("--word", depth_word, "candidate witness word");
  c_depth->add_option("--level", depth_level, "witness level n");
  c_depth->add_option("--scan", scan_args,
                      "scan words: LEN_MAX N_MAX")->expected(2);
  c_depth->add_option("--probe", probe_samples, "chain-relation probe samples");

  // ---- homotopy
  std::string hmt_mode, hmt_letter, hmt_path, hmt_loop, hmt_at, hmt_cert;
  int hmt_rows = 4;
  long hmt_cap = 0, hmt_top = 0, hmt_N = 0, hmt_M = 0;
  auto* c_hmt = app.add_subcommand("homotopy", "cellular homotopy certificates");
  c_hmt->add_option("mode", hmt_mode,
                    "push|string|corner|kill|fp|verify")->required();
  c_hmt->add_option("--letter", hmt_letter, "base edge letter (push)");
  c_hmt->add_option("--path", hmt_path, "edge path (string/corner)");
  c_hmt->add_option("--loop", hmt_loop, "loop word (kill/fp)");
  c_hmt->add_option("--at", hmt_at, "base vertex word");
  c_hmt->add_option("--rows", hmt_rows, "number of rows");
  c_hmt->add_option("--cap", hmt_cap, "level cap (kill)");
  c_hmt->add_option("--top", hmt_top, "top level (corner)");
  c_hmt->add_option("-N", hmt_N);
  c_hmt->add_option("-M", hmt_M);
  c_hmt->add_option("--cert", hmt_cert, "certificate file (verify)");

  // ---- oracle
  auto* c_oracle = app.add_subcommand("oracle", "base oracle verdict");
  c_oracle->add_option("word", word_arg)->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_reduce->parsed()) {
      auto p = load_presentation(opt);
      Word w = p.parse_word(word_arg);
      if (opt.format == "json") {
        ordered_json j;
        j["word"] = w.str();
        emit(opt, j.dump(2) + "\n");
      } else {
        emit(opt, show_word(w));
      }
      return kOk;
    }

    if (c_endo->parsed()) {
      auto p = load_presentation(opt);
      if (endo_k < 0) throw InputError("iterate must be >= 0");
      Word w = p.phi().apply(p.parse_base_word(word_arg), endo_k);
      if (opt.format == "json") {
        ordered_json j;
        j["word"] = w.str();
        emit(opt, j.dump(2) + "\n");
      } else {
        emit(opt, show_word(w));
      }
      return kOk;
    }

    if (c_canon->parsed()) {
      auto p = load_presentation(opt);
      CanonicalForm cf = canonical_form(p.parse_word(word_arg), p);
      if (opt.format == "json") {
        ordered_json j;
        j["n"] = cf.n;
        j["middle"] = cf.middle.str();
        j["m"] = cf.m;
        j["exact"] = cf.exact;
        j["level"] = cf.level();
        emit(opt, j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << "(" << cf.n << ", \"" << cf.middle.str() << "\", " << cf.m << ") "
           << (cf.exact ? "exact" : "best-effort") << " level=" << cf.level();
        emit(opt, os.str());
      }
      return kOk;
    }

    if (c_equal->parsed()) {
      auto p = load_presentation(opt);
      Tri t = equal_in_G(p.parse_word(word_arg), p.parse_word(word_arg2), p);
      emit(opt, to_string(t));
      return exit_for(t);
    }

    if (c_classify->parsed()) {
      auto p = load_presentation(opt);
      Classification c = classify(p.parse_word(word_arg), opt_N, opt_M, p);
      if (opt.format == "json") {
        ordered_json j;
        j["label"] = to_string(c.label);
        j["level"] = c.level;
        j["window"] = {c.window.first, c.window.second};
        j["coset"] = c.coset == Tri::Unknown ? "n/a" : to_string(c.coset);
        emit(opt, j.dump(2) + "\n");
      } else {
        std::ostringstream os;
        os << to_string(c.label) << " (level=" << c.level << ", window=["
           << c.window.first << "," << c.window.second << "], coset="
           << (c.coset == Tri::Unknown ? "n/a" : to_string(c.coset)) << ")";
        emit(opt, os.str());
      }
      return c.label == RegionLabel::Unknown ? kUnknown : kOk;
    }

    if (c_ball->parsed()) {
      auto p = load_presentation(opt);
      Ball b = Ball::build(p, radius);
      if (opt.format == "dot")
        emit(opt, b.to_dot());
      else
        emit(opt, b.to_json_text());
      return kOk;
    }

    if (c_depth->parsed()) {
      auto p = load_presentation(opt);
      ordered_json j;
      if (probe_samples > 0) {
        ProbeReport r = chain_inclusion_probe(p, probe_samples, opt.budget);
        j["samples"] = r.samples;
        j["confirmed"] = r.confirmed;
        j["unknown"] = r.unknown;
        j["entries"] = ordered_json::array();
        for (const ProbeEntry& e : r.entries) {
          ordered_json je;
          je["word"] = e.w.str();
          je["confirmed"] = e.confirmed;
          je["evidence"] = e.evidence;
          j["entries"].push_back(je);
        }
        emit(opt, j.dump(2) + "\n");
        return r.unknown == 0 ? kOk : kUnknown;
      }
      if (!scan_args.empty()) {
        auto witnesses = depth_scan(p, scan_args[0], scan_args[1]);
        j["witnesses"] = ordered_json::array();
        for (const DepthWitness& w : witnesses) {
          ordered_json jw;
          jw["word"] = w.w.str();
          jw["n"] = w.n;
          jw["nontrivial_leg"] = w.nontrivial_leg.evidence;
          jw["trivial_leg"] = w.trivial_leg.evidence;
          j["witnesses"].push_back(jw);
        }
        emit(opt, j.dump(2) + "\n");
        return kOk;
      }
      if (depth_word.empty())
        throw InputError("depth needs --word, --scan or --probe");
      WitnessCheck c =
          depth_witness_check(p.parse_base_word(depth_word), depth_level, p);
      j["word"] = depth_word;
      j["n"] = depth_level;
      switch (c.status) {
        case WitnessCheck::Status::Accepted: j["status"] = "accepted"; break;
        case WitnessCheck::Status::Rejected: j["status"] = "rejected"; break;
        default: j["status"] = "indeterminate";
      }
      if (c.witness) {
        j["nontrivial_leg"] = c.witness->nontrivial_leg.evidence;
        j["trivial_leg"] = c.witness->trivial_leg.evidence;
      } else {
        j["reason"] = c.reason;
      }
      emit(opt, j.dump(2) + "\n");
      return c.status == WitnessCheck::Status::Indeterminate ? kUnknown : kOk;
    }

    if (c_hmt->parsed()) {
      auto p = load_presentation(opt);
      Word at = hmt_at.empty() ? Word() : p.parse_word(hmt_at);

      auto finish_rows = [&](const CellularHomotopy& h) {
        auto v = verify_levels(h, p);
        if (auto* fail = std::get_if<VerifyFailure>(&v)) {
          std::cerr << "level verification failed: " << fail->what << "\n";
          return kVerifyFail;
        }
        emit(opt, h.to_json_text());
        return kOk;
      };

      if (hmt_mode == "push") {
        if (hmt_letter.size() != 1) throw InputError("push needs --letter");
        return finish_rows(
            build_push(p, at, Letter::from_char(hmt_letter[0]), hmt_rows));
      }
      if (hmt_mode == "string") {
        Path s;
        for (char c : hmt_path) s.push_back(Letter::from_char(c));
        return finish_rows(build_string(p, at, s, hmt_rows));
      }
      if (hmt_mode == "corner") {
        Path s;
        for (char c : hmt_path) s.push_back(Letter::from_char(c));
        return finish_rows(build_corner(p, at, s, hmt_top, hmt_rows));
      }
      if (hmt_mode == "kill" || hmt_mode == "fp") {
        if (hmt_loop.empty()) throw InputError("needs --loop");
        Word loop = p.parse_word(hmt_loop);
        auto res = hmt_mode == "kill"
                       ? trivialize_bounded(loop, at, hmt_cap, opt.budget, p)
                       : fp_complement_trivialize(loop, at, hmt_N, hmt_M,
                                                  opt.budget, p);
        if (auto* stats = std::get_if<SearchStats>(&res)) {
          std::cerr << "Unknown: " << stats->str() << "\n";
          return kUnknown;
        }
        const auto& cert = std::get<DiagramCertificate>(res);
        ReplayReport rep = replay(cert, p);
        if (!rep.ok) {
          std::cerr << "replay failed: " << rep.error << "\n";
          return kVerifyFail;
        }
        emit(opt, cert.to_json_text());
        return kOk;
      }
      if (hmt_mode == "verify") {
        if (hmt_cert.empty()) throw InputError("verify needs --cert FILE");
        std::ifstream in(hmt_cert);
        if (!in) throw InputError("cannot open certificate " + hmt_cert);
        std::ostringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        ordered_json probe_schema = ordered_json::parse(text, nullptr, false);
        std::string schema =
            probe_schema.is_object() ? probe_schema.value("schema", "") : "";
        if (schema == "hnnkit-diagram/1") {
          DiagramCertificate cert = DiagramCertificate::from_json_text(text);
          ReplayReport rep = replay(cert, p);
          if (rep.ok) {
            emit(opt, "replay ok; moves=" + std::to_string(rep.moves_applied) +
                          " max_level=" + std::to_string(rep.max_level));
            return kOk;
          }
          std::cerr << "replay failed: " << rep.error << "\n";
          return cert.avoid_D && rep.d_avoided == Tri::Unknown ? kUnknown
                                                               : kVerifyFail;
        }
        CellularHomotopy h = CellularHomotopy::from_json_text(text);
        auto v = verify_levels(h, p);
        if (auto* fail = std::get_if<VerifyFailure>(&v)) {
          std::cerr << "level verification failed: " << fail->what << "\n";
          return kVerifyFail;
        }
        emit(opt, "levels ok; " + std::get<LevelCertificate>(v).statement);
        return kOk;
      }
      throw InputError("unknown homotopy mode '" + hmt_mode + "'");
    }

    if (c_oracle->parsed()) {
      auto p = load_presentation(opt);
      OracleResult r = p.oracle()->is_identity(p.parse_base_word(word_arg));
      if (opt.format == "json") {
        ordered_json j;
        j["verdict"] = to_string(r.value);
        j["evidence"] = r.evidence;
        emit(opt, j.dump(2) + "\n");
      } else {
        emit(opt, to_string(r.value) + " [" + r.evidence + "]");
      }
      return r.value == Verdict::Unknown ? kUnknown : kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ContractError& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return kInputError;
  } catch (const UnknownOutcome& e) {
    std::cerr << "Unknown: " << e.what() << "\n";
    return kUnknown;
  }
  return kInputError;
}
