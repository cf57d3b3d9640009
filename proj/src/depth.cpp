#include "hnn/depth.hpp"

#include <random>

namespace hnn {

WitnessCheck depth_witness_check(const Word& w, int n, const HnnPresentation& p) {
  if (n < 1) throw ContractError("depth witness level must be >= 1");
  if (p.commuting_square() == Tri::False)
    throw InputError(
        "presentation-incompatible: phi does not map every relator to a "
        "base-trivial word");

  WitnessCheck out;
  const auto& oracle = *p.oracle();

  OracleResult lower = oracle.is_identity(p.phi().apply(w, n - 1));
  if (lower.value == Verdict::Trivial) {
    out.status = WitnessCheck::Status::Rejected;
    out.reason = "phi^" + std::to_string(n - 1) + "(w) already trivial: w lies in N_" +
                 std::to_string(n - 1);
    return out;
  }
  if (lower.value == Verdict::Unknown || !oracle.exact()) {
    out.status = WitnessCheck::Status::Indeterminate;
    out.reason = "the Nontrivial leg needs an exact oracle verdict";
    return out;
  }

  OracleResult upper = oracle.is_identity(p.phi().apply(w, n));
  if (upper.value == Verdict::Nontrivial) {
    out.status = WitnessCheck::Status::Rejected;
    out.reason = "phi^" + std::to_string(n) + "(w) is not trivial: w is outside N_" +
                 std::to_string(n);
    return out;
  }
  if (upper.value == Verdict::Unknown) {
    out.status = WitnessCheck::Status::Indeterminate;
    out.reason = "the Trivial leg returned Unknown";
    return out;
  }

  // Tripwire: a witness above a declared depth bound contradicts the
  // bound whenever the truncated closure already certifies w at level B.
  if (p.depth_bound() && n > *p.depth_bound()) {
    auto bd = bounded_depth_oracle(p.relators(), p.phi(), *p.depth_bound());
    if (std::holds_alternative<NormalClosureCertificate>(bd->certify(w)))
      throw std::logic_error(
          "depth witness contradicts the declared depth bound; an oracle is lying");
  }

  out.status = WitnessCheck::Status::Accepted;
  out.witness = DepthWitness{w, n, lower, upper};
  return out;
}

ProbeReport chain_inclusion_probe(const HnnPresentation& p, int samples,
                                  const SearchBudget& budget, unsigned long seed) {
  ProbeReport report;
  if (p.relators().empty()) return report;  // vacuous

  std::mt19937_64 rng(seed);
  const auto& gens = p.alphabet().generators();
  auto random_word = [&](int max_len) {
    std::uniform_int_distribution<int> len_d(0, max_len);
    int len = len_d(rng);
    Path ls;
    for (int i = 0; i < len; ++i) {
      std::uniform_int_distribution<std::size_t> g_d(0, gens.size() - 1);
      std::uniform_int_distribution<int> s_d(0, 1);
      ls.push_back(Letter(gens[g_d(rng)], s_d(rng) ? +1 : -1));
    }
    return Word::from_letters(ls);
  };

  auto oracle = bounded_depth_oracle(p.relators(), p.phi(), 1, budget);
  std::uniform_int_distribution<int> factors_d(1, 3);
  std::uniform_int_distribution<int> iter_d(0, 2);
  std::uniform_int_distribution<std::size_t> rel_d(0, p.relators().size() - 1);
  std::uniform_int_distribution<int> sign_d(0, 1);

  for (int s = 0; s < samples; ++s) {
    Word w;
    int f = factors_d(rng);
    for (int i = 0; i < f; ++i) {
      Word r = p.relators().relators()[rel_d(rng)];
      Word atom = p.phi().apply(r, iter_d(rng));
      if (sign_d(rng)) atom = atom.inverse();
      w = w.concat(atom.conjugate(random_word(2)));
    }
    ProbeEntry entry;
    entry.w = w;
    auto res = oracle->certify(w);
    if (auto* cert = std::get_if<NormalClosureCertificate>(&res)) {
      if (!cert->recheck(p.relators(), p.phi()))
        throw std::logic_error("probe certificate failed its free-reduction recheck");
      entry.confirmed = true;
      entry.evidence = cert->str(p.relators(), p.phi());
      ++report.confirmed;
    } else {
      entry.evidence = std::get<SearchStats>(res).str();
      ++report.unknown;
    }
    ++report.samples;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::vector<DepthWitness> depth_scan(const HnnPresentation& p, int len_max,
                                     int n_max) {
  std::vector<DepthWitness> out;
  if (len_max <= 0) return out;

  // words in (length, lex) order; Letter's ordering puts x before x^-1
  std::vector<Word> frontier{Word()};
  for (int len = 1; len <= len_max; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (char g : p.alphabet().generators())
        for (int s : {+1, -1}) {
          Word ext = w.concat(Word::from_letters({Letter(g, s)}));
          if (ext.size() == w.size() + 1) next.push_back(ext);
        }
    std::sort(next.begin(), next.end());
    for (const Word& w : next) {
      // verdicts on phi^i(w), computed incrementally: once some iterate is
      // trivial every later one is too, so the scan can stop there
      Word img = w;
      Verdict prev = p.oracle()->is_identity(img).value;
      for (int n = 1; n <= n_max && prev == Verdict::Nontrivial; ++n) {
        img = p.phi().apply(img);
        Verdict cur = p.oracle()->is_identity(img).value;
        if (cur == Verdict::Trivial) {
          WitnessCheck c = depth_witness_check(w, n, p);
          if (c.status == WitnessCheck::Status::Accepted) out.push_back(*c.witness);
          break;
        }
        prev = cur;
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace hnn
