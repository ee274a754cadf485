#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mgraph/discretize.hpp"
#include "mgraph/graph.hpp"
#include "mgraph/mincut.hpp"
#include "mgraph/modulus.hpp"

namespace mgraph::report {

// Machine-readable result documents. Infinite values are written as the
// string "inf"; the zero-by-convention ratio is the integer 0.

nlohmann::json Count(ExtendedCount c);

/// {"width","mass","sr","separating","levels","chosen"}
nlohmann::json Analyze(const MeasureGraph& g, const TerminalPair& t,
                       const VertexSet& set);

/// {"width","levels","level_mass","chosen"}; throws like Fibrate.
nlohmann::json Fibration(const MeasureGraph& g, const TerminalPair& t,
                         const VertexSet& set);

/// {"slim","witness","component_witness","slim_set","slim_set_mass"}
nlohmann::json Slim(const MeasureGraph& g, const TerminalPair& t,
                    const VertexSet& set);

/// {"cut_value","cut","flow_value","pencil":[{"path","alpha"}],"C"}
nlohmann::json MinCut(const MeasureGraph& g, const TerminalPair& t);

/// {"p","modulus","gap","rho":{id:value},"active_paths"}; for p = 1 also
/// "cut_value" from an independent min-cut run.
nlohmann::json Modulus(const MeasureGraph& g, const TerminalPair& t, double p,
                       double tol);

/// {"p","pencil","C","C_empirical","C_holder","seed"}
nlohmann::json Pencil(const MeasureGraph& g, const TerminalPair& t, double p,
                      double tol, std::uint64_t seed);

/// Graph document plus "net_indices" and "r".
nlohmann::json Net(const NetGraph& net);

/// "# {metadata}\n" followed by the CSV columns r,width,sr_over_r,cut_over_r.
std::string ExperimentCsv(const std::vector<ExperimentRow>& rows,
                          const nlohmann::json& metadata);

/// Shortest round-trip decimal spelling, or "inf".
std::string FormatNumber(double x);

/// Text describing every input and output format.
std::string Schema();

}  // namespace mgraph::report
