#include <qasp/backend.hpp>
#include <qasp/error.hpp>

#include <string>

namespace qasp {

BackendKind parse_backend(std::string_view name) {
	if (name == "oracle") { return BackendKind::Oracle; }
	if (name == "internal") { return BackendKind::Internal; }
	if (name == "external") { return BackendKind::External; }
	throw InvalidInput("unknown backend '" + std::string(name) + "'");
}

const char* to_string(BackendKind kind) {
	switch (kind) {
	case BackendKind::Oracle: return "oracle";
	case BackendKind::Internal: return "internal";
	case BackendKind::External: return "external";
	}
	return "?";
}

SatResult decide(const QuantifiedProgram& qp, const Backend& backend) {
	switch (backend.kind) {
	case BackendKind::Oracle: return eval_qlp(qp, backend.eval);
	case BackendKind::Internal: return solve(to_qbf(qp), backend.qbf);
	case BackendKind::External: return solve_external(to_qbf(qp), backend.external);
	}
	throw InvalidInput("unknown backend");
}

} // namespace qasp
