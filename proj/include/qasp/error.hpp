#pragma once

#include <stdexcept>
#include <string>

namespace qasp {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line/column when known.
class SyntaxError : public Error {
public:
	SyntaxError(const std::string& msg, int line, int column)
	    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}
	int line() const { return line_; }
	int column() const { return column_; }

private:
	int line_;
	int column_;
};

/// Rule or program outside the supported fragment (unsafe rules, bad arithmetic, ...).
class GroundingError : public Error {
public:
	using Error::Error;
};

/// An exhaustive procedure would exceed its configured enumeration cap or budget.
class BudgetExceeded : public Error {
public:
	using Error::Error;
};

/// A precondition of an operation does not hold for its arguments.
class InvalidInput : public Error {
public:
	using Error::Error;
};

/// An external solver failed to run, timed out or produced unreadable output.
class SolverError : public Error {
public:
	using Error::Error;
};

} // namespace qasp
