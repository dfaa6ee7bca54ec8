#pragma once

// JSON and CSV forms of the library's values. Exact entries are rational
// strings ("p/q"); approximate entries are decimal strings in scientific
// notation. Readers accept either form where a Real is expected.

#include "qdj/action.hpp"
#include "qdj/cartan.hpp"
#include "qdj/cgtwist.hpp"
#include "qdj/lift.hpp"
#include "qdj/rep.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdj::io {

using json = nlohmann::ordered_json;

json to_json(const QMatrix& m);
json to_json(const RealMatrix& m);
QMatrix qmatrix_from_json(const json& j);
RealMatrix real_matrix_from_json(const json& j);

json to_json(const CartanDatum& c);
/// Accepts {"label", "a", "d"}; a bare builtin label string also works.
CartanDatum cartan_from_json(const json& j);

json to_json(const Rep& r);
Rep rep_from_json(const json& j);

json to_json(const RelationReport& r);

json to_json(const CGDecomposition& cg);
json to_json(const TwistBlock& t, const Real& tol);
json to_json(const AssociatorBlock& a, const Real& tol);

json to_json(const Action& a);
json to_json(const RealAction& a);
RealAction action_from_json(const json& j);

json to_json(const LiftResult& r, const Real& tol);

/// File-system failures (unreadable, unwritable, unparsable files).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_file(const std::filesystem::path& path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_file(const std::filesystem::path& path, const json& j);

/// Minimal CSV table: a header row plus rows of preformatted cells. Cells
/// containing commas or quotes are quoted.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

CsvTable to_csv(const RelationReport& r);
CsvTable to_csv(const std::vector<TwistBlock>& blocks, const Real& tol);
CsvTable to_csv(const std::vector<AssociatorBlock>& blocks, const Real& tol);
CsvTable to_csv(const LiftResult& r, const Real& tol);
CsvTable to_csv(const CGDecomposition& cg);

}  // namespace qdj::io
