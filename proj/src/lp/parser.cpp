#include <qasp/error.hpp>
#include <qasp/parser.hpp>

#include <cctype>

namespace qasp::syntax {

Term Term::number(std::int64_t v) {
	Term t;
	t.kind = Kind::Number;
	t.value = v;
	return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
	Term t;
	t.kind = Kind::Function;
	t.name = std::move(name);
	t.args = std::move(args);
	return t;
}

Term Term::variable(std::string name) {
	Term t;
	t.kind = Kind::Variable;
	t.name = std::move(name);
	return t;
}

Term Term::binary(char op, Term lhs, Term rhs) {
	Term t;
	t.kind = Kind::Binary;
	t.op = op;
	t.args = {std::move(lhs), std::move(rhs)};
	return t;
}

bool Term::is_ground() const {
	if (kind == Kind::Variable) { return false; }
	for (const auto& a : args) {
		if (!a.is_ground()) { return false; }
	}
	return true;
}

std::string to_string(const Term& t) {
	switch (t.kind) {
		case Term::Kind::Number: return std::to_string(t.value);
		case Term::Kind::Variable: return t.name;
		case Term::Kind::Minus: return "-" + to_string(t.args[0]);
		case Term::Kind::Interval: return to_string(t.args[0]) + ".." + to_string(t.args[1]);
		case Term::Kind::Binary: return "(" + to_string(t.args[0]) + t.op + to_string(t.args[1]) + ")";
		case Term::Kind::Function: {
			std::string out = t.name;
			if (!t.args.empty()) {
				out += '(';
				for (std::size_t i = 0; i != t.args.size(); ++i) {
					if (i) { out += ','; }
					out += to_string(t.args[i]);
				}
				out += ')';
			}
			return out;
		}
	}
	return "?";
}

void ParsedProgram::append(ParsedProgram other) {
	for (auto& r : other.rules) { rules.push_back(std::move(r)); }
	for (auto& [k, v] : other.consts) { consts.insert_or_assign(k, std::move(v)); }
}

namespace {

enum class Tok {
	End, Ident, Var, Number, LParen, RParen, LBrace, RBrace, Comma, Semi, Colon, Dot, DotDot, If,
	Cmp, Plus, Minus, Star, Not, Directive,
};

struct Token {
	Tok kind = Tok::End;
	std::string text;
	std::int64_t value = 0;
	CmpOp cmp = CmpOp::Eq;
	int line = 1;
	int column = 1;
};

bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

class Lexer {
public:
	Lexer(std::string_view text, int line_offset) : text_(text), line_(1 + line_offset) {}

	Token next() {
		skip();
		Token t;
		t.line = line_;
		t.column = col_;
		if (pos_ >= text_.size()) { return t; }
		unsigned char c = text_[pos_];
		auto single = [&](Tok k) {
			advance(1);
			t.kind = k;
			return t;
		};
		if (std::isdigit(c)) {
			std::size_t start = pos_;
			while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) { advance(1); }
			t.kind = Tok::Number;
			t.text = std::string(text_.substr(start, pos_ - start));
			try {
				t.value = std::stoll(t.text);
			}
			catch (const std::out_of_range&) {
				throw SyntaxError("integer out of range", t.line, t.column);
			}
			return t;
		}
		if (ident_char(c)) {
			std::size_t start = pos_;
			while (pos_ < text_.size() && ident_char(static_cast<unsigned char>(text_[pos_]))) { advance(1); }
			while (pos_ < text_.size() && text_[pos_] == '\'') { advance(1); }
			t.text = std::string(text_.substr(start, pos_ - start));
			std::size_t k = 0;
			while (k < t.text.size() && t.text[k] == '_') { ++k; }
			if (k == t.text.size()) { throw SyntaxError("anonymous variables are not supported", t.line, t.column); }
			unsigned char first = t.text[k];
			if (std::isdigit(first)) { throw SyntaxError("unexpected identifier '" + t.text + "'", t.line, t.column); }
			t.kind = std::isupper(first) ? Tok::Var : Tok::Ident;
			if (t.kind == Tok::Ident && t.text == "not") { t.kind = Tok::Not; }
			return t;
		}
		auto peek = [&](std::size_t off) -> char { return pos_ + off < text_.size() ? text_[pos_ + off] : '\0'; };
		switch (c) {
			case '(': return single(Tok::LParen);
			case ')': return single(Tok::RParen);
			case '{': return single(Tok::LBrace);
			case '}': return single(Tok::RBrace);
			case ',': return single(Tok::Comma);
			case ';': return single(Tok::Semi);
			case '+': return single(Tok::Plus);
			case '-': return single(Tok::Minus);
			case '*': return single(Tok::Star);
			case '.':
				if (peek(1) == '.') {
					advance(2);
					t.kind = Tok::DotDot;
					return t;
				}
				return single(Tok::Dot);
			case ':':
				if (peek(1) == '-') {
					advance(2);
					t.kind = Tok::If;
					return t;
				}
				return single(Tok::Colon);
			case '=':
				t.cmp = CmpOp::Eq;
				advance(peek(1) == '=' ? 2 : 1);
				t.kind = Tok::Cmp;
				return t;
			case '!':
				if (peek(1) == '=') {
					t.cmp = CmpOp::Ne;
					advance(2);
					t.kind = Tok::Cmp;
					return t;
				}
				break;
			case '<':
			case '>': {
				bool eq = peek(1) == '=';
				t.cmp = c == '<' ? (eq ? CmpOp::Le : CmpOp::Lt) : (eq ? CmpOp::Ge : CmpOp::Gt);
				advance(eq ? 2 : 1);
				t.kind = Tok::Cmp;
				return t;
			}
			case '#': {
				std::size_t start = pos_;
				advance(1);
				while (pos_ < text_.size() && ident_char(static_cast<unsigned char>(text_[pos_]))) { advance(1); }
				t.kind = Tok::Directive;
				t.text = std::string(text_.substr(start, pos_ - start));
				return t;
			}
			default: break;
		}
		throw SyntaxError(std::string("unexpected character '") + static_cast<char>(c) + "'", t.line, t.column);
	}

private:
	void advance(std::size_t n) {
		for (std::size_t i = 0; i != n && pos_ < text_.size(); ++i, ++pos_) {
			if (text_[pos_] == '\n') {
				++line_;
				col_ = 1;
			}
			else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) { ++col_; }
		}
	}

	void skip() {
		while (pos_ < text_.size()) {
			char c = text_[pos_];
			if (c == '%') {
				while (pos_ < text_.size() && text_[pos_] != '\n') { advance(1); }
			}
			else if (std::isspace(static_cast<unsigned char>(c))) { advance(1); }
			else { break; }
		}
	}

	std::string_view text_;
	std::size_t pos_ = 0;
	int line_;
	int col_ = 1;
};

class Parser {
public:
	Parser(std::string_view text, const ParseOptions& opts) : lex_(text, opts.line_offset), opts_(opts) { shift(); }

	ParsedProgram run() {
		ParsedProgram out;
		while (tok_.kind != Tok::End) { statement(out); }
		return out;
	}

private:
	[[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, tok_.line, tok_.column); }

	void shift() { tok_ = lex_.next(); }

	bool accept(Tok k) {
		if (tok_.kind != k) { return false; }
		shift();
		return true;
	}

	void expect(Tok k, const char* what) {
		if (!accept(k)) { fail(std::string("expected ") + what); }
	}

	void statement(ParsedProgram& out) {
		if (tok_.kind == Tok::Directive) {
			if (tok_.text != "#const") { fail("unknown directive " + tok_.text); }
			shift();
			if (tok_.kind != Tok::Ident) { fail("expected constant name"); }
			std::string name = tok_.text;
			shift();
			if (tok_.kind != Tok::Cmp || tok_.cmp != CmpOp::Eq) { fail("expected '='"); }
			shift();
			Term value = term();
			expect(Tok::Dot, "'.'");
			out.consts.insert_or_assign(name, std::move(value));
			return;
		}
		SRule r;
		r.line = tok_.line;
		if (tok_.kind == Tok::If) { r.type = HeadType::Constraint; }
		else if (tok_.kind == Tok::LBrace) {
			r.type = HeadType::Choice;
			shift();
			if (tok_.kind != Tok::RBrace) { r.head = elements(); }
			expect(Tok::RBrace, "'}'");
			for (const auto& e : r.head) {
				if (e.literal.kind != Lit::Kind::Atom || e.literal.negated) { fail("choice elements must be atoms"); }
			}
			if (tok_.kind == Tok::Cmp) {
				CmpOp op = tok_.cmp;
				shift();
				r.head_bound.emplace(op, term());
			}
		}
		else {
			r.type = HeadType::Normal;
			Term h = term();
			if (opts_.sensing && tok_.kind == Tok::Ident && tok_.text == "senses") {
				shift();
				Term f = term();
				h = Term::function("senses", {std::move(h), std::move(f)});
			}
			if (h.kind != Term::Kind::Function) { fail("expected atom in rule head"); }
			Elem e;
			e.literal.atom = std::move(h);
			r.head.push_back(std::move(e));
			if (tok_.kind == Tok::Semi || tok_.kind == Tok::Colon) { fail("disjunctive and conditional heads are not supported"); }
		}
		if (accept(Tok::If)) {
			if (tok_.kind != Tok::Dot) { body(r); }
		}
		expect(Tok::Dot, "'.'");
		out.rules.push_back(std::move(r));
	}

	void body(SRule& r) {
		do {
			if (tok_.kind == Tok::LBrace) {
				shift();
				Agg a;
				if (tok_.kind != Tok::RBrace) { a.elements = elements(); }
				expect(Tok::RBrace, "'}'");
				if (tok_.kind != Tok::Cmp) { fail("expected comparison after aggregate"); }
				a.op = tok_.cmp;
				shift();
				a.bound = term();
				r.aggregates.push_back(std::move(a));
			}
			else { r.body.push_back(literal()); }
		} while (accept(Tok::Comma));
	}

	std::vector<Elem> elements() {
		std::vector<Elem> out;
		while (true) {
			Elem e;
			e.literal = literal();
			if (accept(Tok::Colon)) {
				e.condition.push_back(literal());
				while (accept(Tok::Comma)) { e.condition.push_back(literal()); }
			}
			out.push_back(std::move(e));
			if (!accept(Tok::Semi) && !accept(Tok::Comma)) { break; }
		}
		return out;
	}

	Lit literal() {
		Lit l;
		if (accept(Tok::Not)) {
			l.negated = true;
			l.atom = term();
			if (l.atom.kind != Term::Kind::Function) { fail("expected atom after 'not'"); }
			return l;
		}
		Term t = term();
		if (tok_.kind == Tok::Cmp) {
			l.kind = Lit::Kind::Compare;
			l.op = tok_.cmp;
			shift();
			l.lhs = std::move(t);
			l.rhs = term();
			return l;
		}
		if (t.kind != Term::Kind::Function) { fail("expected atom or comparison"); }
		l.atom = std::move(t);
		return l;
	}

	Term term() {
		Term t = additive();
		if (accept(Tok::DotDot)) {
			Term iv;
			iv.kind = Term::Kind::Interval;
			iv.args = {std::move(t), additive()};
			return iv;
		}
		return t;
	}

	Term additive() {
		Term t = multiplicative();
		while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
			char op = tok_.kind == Tok::Plus ? '+' : '-';
			shift();
			t = Term::binary(op, std::move(t), multiplicative());
		}
		return t;
	}

	Term multiplicative() {
		Term t = unary();
		while (accept(Tok::Star)) { t = Term::binary('*', std::move(t), unary()); }
		return t;
	}

	Term unary() {
		if (accept(Tok::Minus)) {
			Term inner = unary();
			if (inner.kind == Term::Kind::Number) { return Term::number(-inner.value); }
			Term m;
			m.kind = Term::Kind::Minus;
			m.args.push_back(std::move(inner));
			return m;
		}
		return primary();
	}

	Term primary() {
		switch (tok_.kind) {
			case Tok::Number: {
				auto v = tok_.value;
				shift();
				return Term::number(v);
			}
			case Tok::Var: {
				auto name = tok_.text;
				shift();
				return Term::variable(std::move(name));
			}
			case Tok::Ident: {
				auto name = tok_.text;
				shift();
				std::vector<Term> args;
				if (accept(Tok::LParen)) {
					if (tok_.kind != Tok::RParen) {
						args.push_back(term());
						while (accept(Tok::Comma)) { args.push_back(term()); }
					}
					expect(Tok::RParen, "')'");
				}
				return Term::function(std::move(name), std::move(args));
			}
			case Tok::LParen: {
				shift();
				Term t = term();
				expect(Tok::RParen, "')'");
				return t;
			}
			case Tok::End: fail("unexpected end of input");
			default: fail("expected term");
		}
	}

	Lexer lex_;
	ParseOptions opts_;
	Token tok_;
};

} // namespace

ParsedProgram parse(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).run(); }

} // namespace qasp::syntax
