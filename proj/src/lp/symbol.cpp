#include <qasp/symbol.hpp>

#include <ostream>

namespace qasp {

namespace {
std::size_t mix(std::size_t seed, std::size_t v) {
	return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
} // namespace

Symbol::Symbol(std::int64_t v) : kind_(Kind::Number), num_(v), hash_(mix(0x51ed27, std::hash<std::int64_t>{}(v))) {}

Symbol Symbol::function(std::string name, std::vector<Symbol> args) {
	Symbol s;
	s.kind_ = Kind::Function;
	s.num_ = 0;
	s.hash_ = mix(0xf00d, std::hash<std::string>{}(name));
	for (const auto& a : args) { s.hash_ = mix(s.hash_, a.hash()); }
	s.name_ = std::move(name);
	s.args_ = std::move(args);
	return s;
}

bool operator==(const Symbol& a, const Symbol& b) {
	if (a.hash_ != b.hash_ || a.kind_ != b.kind_) { return false; }
	if (a.is_number()) { return a.num_ == b.num_; }
	return a.name_ == b.name_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
	if (a.kind_ != b.kind_) { return a.kind_ <=> b.kind_; }
	if (a.is_number()) { return a.num_ <=> b.num_; }
	if (auto c = a.name_.compare(b.name_); c != 0) { return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater; }
	if (a.args_.size() != b.args_.size()) { return a.args_.size() <=> b.args_.size(); }
	for (std::size_t i = 0; i != a.args_.size(); ++i) {
		if (auto c = a.args_[i] <=> b.args_[i]; c != 0) { return c; }
	}
	return std::strong_ordering::equal;
}

namespace {
void print(std::string& out, const Symbol& s) {
	if (s.is_number()) {
		out += std::to_string(s.value());
		return;
	}
	out += s.name();
	if (s.arity() == 0) { return; }
	out += '(';
	bool first = true;
	for (const auto& a : s.args()) {
		if (!first) { out += ','; }
		first = false;
		print(out, a);
	}
	out += ')';
}
} // namespace

std::string Symbol::to_string() const {
	std::string out;
	print(out, *this);
	return out;
}

std::ostream& operator<<(std::ostream& out, const Symbol& s) { return out << s.to_string(); }

Atom wrap(std::string_view name, const Atom& inner) { return Symbol::function(std::string(name), {inner}); }

Atom make_atom(std::string_view name, std::vector<Symbol> args) { return Symbol::function(std::string(name), std::move(args)); }

} // namespace qasp
