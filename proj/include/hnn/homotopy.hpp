#pragma once

// Row-structured cellular homotopies (push / string / corner) with
// checkable level certificates, and van Kampen style diagram certificates:
// sequences of elementary moves (backtrack insertion/deletion, conjugation
// cell crossings, relator cell fillings) verified by an independent
// replayer that only knows move legality.

#include <variant>

#include "hnn/canonical.hpp"
#include "hnn/oracle.hpp"

namespace hnn {

struct HomotopyRow {
  Word base;   // vertex word at the row's left end
  Path label;  // base-letter edge path at this row's level (unreduced)
};

struct ConjCell {
  int row = 0;         // strip between `row` and `row + 1`
  int index = 0;       // position along row's label
  Letter bottom;       // the pushed base letter (signed)
  int top_offset = 0;  // start of its image segment in row+1's label
  int top_len = 0;     // image length; 0 marks a degenerate bigon
};

struct RampBlock {  // corner stage 1: one base edge sliding up to the top
  int edge_index = 0;
  Word base;  // vertex word where the edge starts
  long from_level = 0;
  std::vector<Path> rows;  // labels at levels from_level .. top_level
};

struct CellularHomotopy {
  enum class Kind { Push, String, Corner };
  Kind kind = Kind::Push;
  Word base;            // base vertex of row 0 (for corner: of the slid path)
  long base_level = 0;  // level of row 0
  std::vector<HomotopyRow> rows;
  std::vector<ConjCell> cells;
  std::vector<RampBlock> ramp;  // corner stage 1
  Path input_path;              // original path (string/corner)

  std::size_t cell_count_in_strip(int row) const;
  std::string to_json_text() const;
  static CellularHomotopy from_json_text(const std::string& text);
};

struct LevelCertificate {
  long base_level = 0;
  // strip k sits between levels [lo, hi] = [base+k, base+k+1]
  std::vector<std::pair<long, long>> strip_intervals;
  std::string statement;  // the finite properness statement
};

struct VerifyFailure {
  std::string what;
  int row = -1;
  int cell = -1;
};

// Row 0 is the edge `a` at vertex `at`; row k is phi^k(a) at `at t^k`; the
// strip between rows k and k+1 has exactly |row k| conjugation cells.
CellularHomotopy build_push(const HnnPresentation& p, const Word& at, Letter edge,
                            int rows);

// Horizontal concatenation of pushes along a nonempty base-letter path.
CellularHomotopy build_string(const HnnPresentation& p, const Word& at,
                              const Path& s, int rows);

// Stage 1 slides every base edge of s (a path with stable and base edges)
// up to `top_level`; stage 2 is the string homotopy of the slid path.
CellularHomotopy build_corner(const HnnPresentation& p, const Word& at,
                              const Path& s, long top_level, int rows);

std::variant<LevelCertificate, VerifyFailure> verify_levels(
    const CellularHomotopy& h, const HnnPresentation& p);

// ------------------------------------------------------------------ diagrams

enum class MoveKind {
  InsertPair,    // insert l l^-1 at pos
  DeletePair,    // delete adjacent l l^-1 at pos
  LiftValley,    // replace t^-1 x t at pos by phi(x)
  LowerImage,    // replace the literal segment phi(x) at pos by t^-1 x t
  RelatorDelete, // delete a rotation of r^sign at pos
  RelatorInsert, // insert a rotation of r^sign at pos
};

std::string to_string(MoveKind k);

struct Move {
  MoveKind kind = MoveKind::InsertPair;
  int pos = 0;
  Letter letter;     // InsertPair / LiftValley / LowerImage
  int relator = 0;   // RelatorDelete / RelatorInsert
  int rotation = 0;
  int sign = +1;
};

struct DiagramCertificate {
  Word base;       // vertex the loop is read from
  Path initial;    // the loop
  long level_cap = 0;
  std::optional<std::pair<long, long>> avoid_D;  // (N, M) replay check
  std::vector<Move> moves;

  std::string to_json_text() const;
  static DiagramCertificate from_json_text(const std::string& text);
};

struct ReplayReport {
  bool ok = false;
  std::string error;
  long max_level = 0;
  std::size_t moves_applied = 0;
  Tri d_avoided = Tri::Unknown;  // meaningful when avoid_D is set
};

// Replays the move list from the initial loop; succeeds iff every move is
// legal, the final path is empty, no vertex exceeds level_cap, and (when
// avoid_D is set) no intermediate vertex lies in D(N,M).
ReplayReport replay(const DiagramCertificate& cert, const HnnPresentation& p);

// Contracts a null-homotopic loop (zero stable-exponent word) to the empty
// path keeping every vertex level <= level_cap: valley lifting to a single
// level, then at most (level_cap - top) upward conjugations until the
// bounded-depth search certifies membership in the iterated relator
// closure, then relator fillings with conjugation descents.
std::variant<DiagramCertificate, SearchStats> trivialize_bounded(
    const Word& loop, const Word& base, long level_cap,
    const SearchBudget& budget, const HnnPresentation& p);

// Contraction that avoids D(N,M) throughout. Branches on the region of
// the base vertex: OtherComponent loops slide to level N-M-1 and fill with
// iterate-unrestricted certificates; SpecialK0 loops stay at their top
// level and fill with iterate-0 certificates only (no descent).
std::variant<DiagramCertificate, SearchStats> fp_complement_trivialize(
    const Word& loop, const Word& base, long n, long m,
    const SearchBudget& budget, const HnnPresentation& p);

}  // namespace hnn
