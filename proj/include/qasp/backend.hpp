#pragma once

#include <qasp/qbf.hpp>
#include <qasp/qlp.hpp>

#include <string_view>

namespace qasp {

enum class BackendKind : std::uint8_t { Oracle, Internal, External };

/// How quantified programs are decided: the recursive evaluator, or the
/// QBF translation solved internally or by an external QDIMACS solver.
struct Backend {
	BackendKind kind = BackendKind::Internal;
	ExternalSolver external;
	EvalOptions eval;
	QbfOptions qbf;
};

BackendKind parse_backend(std::string_view name);
const char* to_string(BackendKind kind);

SatResult decide(const QuantifiedProgram& qp, const Backend& backend);

} // namespace qasp
