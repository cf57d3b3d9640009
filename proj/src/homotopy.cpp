#include "hnn/homotopy.hpp"

#include <sstream>

#include "json.hpp"

namespace hnn {

using ordered_json = nlohmann::ordered_json;

namespace {

// Per-letter substitution without free reduction: rows are edge paths, so
// junction backtracks must survive for the cells to tile the strip.
Path expand_path(const Endomorphism& phi, const Path& row) {
  Path out;
  for (const Letter& l : row) {
    const Word& img = phi.image(l.gen);
    if (l.sign > 0) {
      for (const Letter& x : img.letters()) out.push_back(x);
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it)
        out.push_back(it->inverse());
    }
  }
  return out;
}

std::string path_str(const Path& p) {
  std::string s;
  for (const Letter& l : p) s.push_back(l.to_char());
  return s;
}

Path parse_path(const std::string& s) {
  Path p;
  for (char c : s) p.push_back(Letter::from_char(c));
  return p;
}

void check_base_letters(const HnnPresentation& p, const Path& s) {
  for (const Letter& l : s)
    if (!p.alphabet().contains(l.gen))
      throw ContractError(std::string("path letter '") + l.gen +
                          "' is not a base generator");
}

void build_rows(const HnnPresentation& p, CellularHomotopy& h, const Path& top,
                int rows) {
  Path cur = top;
  Word base = h.base;
  for (int k = 0; k <= rows; ++k) {
    h.rows.push_back({base, cur});
    if (k == rows) break;
    Path next = expand_path(p.phi(), cur);
    int off = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      int len = static_cast<int>(p.phi().image(cur[i].gen).size());
      h.cells.push_back({k, static_cast<int>(i), cur[i], off, len});
      off += len;
    }
    cur = std::move(next);
    base = base.concat(Word::from_letters({Letter(p.stable(), +1)}));
  }
}

}  // namespace

std::size_t CellularHomotopy::cell_count_in_strip(int row) const {
  std::size_t n = 0;
  for (const ConjCell& c : cells)
    if (c.row == row) ++n;
  return n;
}

CellularHomotopy build_push(const HnnPresentation& p, const Word& at, Letter edge,
                            int rows) {
  if (rows < 1) throw ContractError("build_push needs at least one row");
  check_base_letters(p, {edge});
  CellularHomotopy h;
  h.kind = CellularHomotopy::Kind::Push;
  h.base = at;
  h.base_level = level(at, p);
  h.input_path = {edge};
  build_rows(p, h, {edge}, rows);
  return h;
}

CellularHomotopy build_string(const HnnPresentation& p, const Word& at,
                              const Path& s, int rows) {
  if (s.empty()) throw ContractError("build_string needs a nonempty path");
  if (rows < 1) throw ContractError("build_string needs at least one row");
  check_base_letters(p, s);
  CellularHomotopy h;
  h.kind = CellularHomotopy::Kind::String;
  h.base = at;
  h.base_level = level(at, p);
  h.input_path = s;
  build_rows(p, h, s, rows);
  return h;
}

CellularHomotopy build_corner(const HnnPresentation& p, const Word& at,
                              const Path& s, long top_level, int rows) {
  if (rows < 1) throw ContractError("build_corner needs at least one row");
  const char t = p.stable();

  CellularHomotopy h;
  h.kind = CellularHomotopy::Kind::Corner;
  h.input_path = s;

  // stage 1: slide every base edge up to top_level
  long lv = level(at, p);
  Word walk = at;
  Path slid;
  int edge_index = 0;
  for (const Letter& l : s) {
    if (l.gen == t) {
      lv += l.sign;
      if (lv > top_level)
        throw ContractError("path levels exit the declared interval");
    } else {
      if (!p.alphabet().contains(l.gen))
        throw ContractError(std::string("path letter '") + l.gen +
                            "' is not a generator");
      RampBlock block;
      block.edge_index = edge_index;
      block.base = walk;
      block.from_level = lv;
      Path row{l};
      for (long j = lv; j <= top_level; ++j) {
        block.rows.push_back(row);
        if (j < top_level) row = expand_path(p.phi(), row);
      }
      for (const Letter& x : block.rows.back()) slid.push_back(x);
      h.ramp.push_back(std::move(block));
    }
    walk = walk.concat(Word::from_letters({l}));
    ++edge_index;
  }

  h.base = at.concat(p.stable_power(top_level - level(at, p)));
  h.base_level = top_level;
  if (!slid.empty()) build_rows(p, h, slid, rows);
  return h;
}

namespace {

std::optional<VerifyFailure> verify_grid(const CellularHomotopy& h,
                                         const HnnPresentation& p) {
  for (std::size_t k = 0; k < h.rows.size(); ++k) {
    const HomotopyRow& row = h.rows[k];
    if (level(row.base, p) != h.base_level + static_cast<long>(k))
      return VerifyFailure{"row base vertex is at the wrong level",
                           static_cast<int>(k), -1};
    for (const Letter& l : row.label)
      if (l.gen == p.stable())
        return VerifyFailure{"row label contains a stable letter",
                             static_cast<int>(k), -1};
    if (k > 0) {
      Word expect = h.rows[k - 1].base.concat(
          Word::from_letters({Letter(p.stable(), +1)}));
      if (!(row.base == expect))
        return VerifyFailure{"left rail broken between rows",
                             static_cast<int>(k), -1};
    }
  }
  // cells tile each strip: positions 0..len-1 once each, image segments
  // consecutive and verbatim equal to phi of the bottom letter
  for (std::size_t k = 0; k + 1 < h.rows.size(); ++k) {
    std::vector<const ConjCell*> strip;
    for (const ConjCell& c : h.cells)
      if (c.row == static_cast<int>(k)) strip.push_back(&c);
    if (strip.size() != h.rows[k].label.size())
      return VerifyFailure{"strip cell count differs from row length",
                           static_cast<int>(k), -1};
    int off = 0;
    for (std::size_t i = 0; i < strip.size(); ++i) {
      const ConjCell& c = *strip[i];
      if (c.index != static_cast<int>(i))
        return VerifyFailure{"cells out of order", static_cast<int>(k),
                             static_cast<int>(i)};
      if (!(c.bottom == h.rows[k].label[i]))
        return VerifyFailure{"cell bottom letter mismatch", static_cast<int>(k),
                             static_cast<int>(i)};
      if (c.top_offset != off)
        return VerifyFailure{"cell image segments not consecutive",
                             static_cast<int>(k), static_cast<int>(i)};
      const Word& img = p.phi().image(c.bottom.gen);
      if (c.top_len != static_cast<int>(img.size()))
        return VerifyFailure{"cell image length mismatch", static_cast<int>(k),
                             static_cast<int>(i)};
      // verbatim segment check, orientation-adjusted
      const Path& above = h.rows[k + 1].label;
      if (c.top_offset + c.top_len > static_cast<int>(above.size()))
        return VerifyFailure{"cell image segment overruns the row above",
                             static_cast<int>(k), static_cast<int>(i)};
      for (int j = 0; j < c.top_len; ++j) {
        Letter want = c.bottom.sign > 0
                          ? img[j]
                          : img[img.size() - 1 - j].inverse();
        if (!(above[c.top_offset + j] == want))
          return VerifyFailure{"cell image letters differ from phi(bottom)",
                               static_cast<int>(k), static_cast<int>(i)};
      }
      off += c.top_len;
    }
    if (off != static_cast<int>(h.rows[k + 1].label.size()))
      return VerifyFailure{"row above has letters not covered by any cell",
                           static_cast<int>(k), -1};
  }
  return std::nullopt;
}

}  // namespace

std::variant<LevelCertificate, VerifyFailure> verify_levels(
    const CellularHomotopy& h, const HnnPresentation& p) {
  if (h.kind == CellularHomotopy::Kind::Corner) {
    // stage 1 blocks: each is a single-letter push from its own level
    Path slid_expect;
    for (const RampBlock& b : h.ramp) {
      if (b.rows.empty())
        return VerifyFailure{"empty ramp block", -1, b.edge_index};
      if (level(b.base, p) != b.from_level)
        return VerifyFailure{"ramp block base level mismatch", -1, b.edge_index};
      long height = h.base_level - b.from_level;
      if (static_cast<long>(b.rows.size()) != height + 1)
        return VerifyFailure{"ramp block height mismatch", -1, b.edge_index};
      for (std::size_t j = 0; j + 1 < b.rows.size(); ++j) {
        Path want = expand_path(p.phi(), b.rows[j]);
        if (!(want == b.rows[j + 1]))
          return VerifyFailure{"ramp row recurrence broken", -1, b.edge_index};
      }
      for (const Letter& x : b.rows.back()) slid_expect.push_back(x);
    }
    if (!h.rows.empty() && !(h.rows[0].label == slid_expect))
      return VerifyFailure{"slid path differs from ramp block tops", 0, -1};
  }

  if (auto fail = verify_grid(h, p)) return *fail;

  LevelCertificate cert;
  cert.base_level = h.base_level;
  for (std::size_t k = 0; k + 1 < h.rows.size(); ++k)
    cert.strip_intervals.emplace_back(h.base_level + static_cast<long>(k),
                                      h.base_level + static_cast<long>(k) + 1);
  std::ostringstream st;
  st << "rows hold levels exactly; every cell meeting levels <= L lies in "
        "strips 0.."
     << "L-(" << cert.base_level << "); the preimage of a compact level range "
     << "is a finite union of strips";
  cert.statement = st.str();
  return cert;
}

// ------------------------------------------------------------------ JSON

std::string CellularHomotopy::to_json_text() const {
  ordered_json j;
  j["schema"] = "hnnkit-homotopy/1";
  switch (kind) {
    case Kind::Push: j["kind"] = "push"; break;
    case Kind::String: j["kind"] = "string"; break;
    case Kind::Corner: j["kind"] = "corner"; break;
  }
  j["base"] = base.str();
  j["base_level"] = base_level;
  j["input_path"] = path_str(input_path);
  j["rows"] = ordered_json::array();
  for (const HomotopyRow& r : rows) {
    ordered_json jr;
    jr["base"] = r.base.str();
    jr["label"] = path_str(r.label);
    j["rows"].push_back(jr);
  }
  j["cells"] = ordered_json::array();
  for (const ConjCell& c : cells) {
    ordered_json jc;
    jc["row"] = c.row;
    jc["index"] = c.index;
    jc["bottom"] = std::string(1, c.bottom.to_char());
    jc["top_offset"] = c.top_offset;
    jc["top_len"] = c.top_len;
    j["cells"].push_back(jc);
  }
  j["ramp"] = ordered_json::array();
  for (const RampBlock& b : ramp) {
    ordered_json jb;
    jb["edge_index"] = b.edge_index;
    jb["base"] = b.base.str();
    jb["from_level"] = b.from_level;
    jb["rows"] = ordered_json::array();
    for (const Path& r : b.rows) jb["rows"].push_back(path_str(r));
    j["ramp"].push_back(jb);
  }
  return j.dump(2) + "\n";
}

CellularHomotopy CellularHomotopy::from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("homotopy JSON parse error: ") + e.what());
  }
  if (j.value("schema", std::string()) != "hnnkit-homotopy/1")
    throw InputError("unrecognized homotopy schema");
  CellularHomotopy h;
  std::string kind = j.at("kind").get<std::string>();
  h.kind = kind == "push"     ? Kind::Push
           : kind == "string" ? Kind::String
                              : Kind::Corner;
  h.base = Word::parse(j.at("base").get<std::string>());
  h.base_level = j.at("base_level").get<long>();
  h.input_path = parse_path(j.at("input_path").get<std::string>());
  for (const auto& jr : j.at("rows"))
    h.rows.push_back({Word::parse(jr.at("base").get<std::string>()),
                      parse_path(jr.at("label").get<std::string>())});
  for (const auto& jc : j.at("cells")) {
    ConjCell c;
    c.row = jc.at("row").get<int>();
    c.index = jc.at("index").get<int>();
    std::string b = jc.at("bottom").get<std::string>();
    if (b.size() != 1) throw InputError("cell bottom must be one letter");
    c.bottom = Letter::from_char(b[0]);
    c.top_offset = jc.at("top_offset").get<int>();
    c.top_len = jc.at("top_len").get<int>();
    h.cells.push_back(c);
  }
  if (j.contains("ramp"))
    for (const auto& jb : j.at("ramp")) {
      RampBlock b;
      b.edge_index = jb.at("edge_index").get<int>();
      b.base = Word::parse(jb.at("base").get<std::string>());
      b.from_level = jb.at("from_level").get<long>();
      for (const auto& jr : jb.at("rows")) b.rows.push_back(parse_path(jr.get<std::string>()));
      h.ramp.push_back(std::move(b));
    }
  return h;
}

}  // namespace hnn
