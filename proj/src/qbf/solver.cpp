#include <qasp/error.hpp>
#include <qasp/qbf.hpp>

#include <algorithm>
#include <cstdlib>

namespace qasp {

std::vector<QbfBlock> merge_adjacent(const std::vector<QbfBlock>& prefix) {
	std::vector<QbfBlock> out;
	for (const auto& b : prefix) {
		if (b.vars.empty()) { continue; }
		if (!out.empty() && out.back().kind == b.kind) { out.back().vars.insert(out.back().vars.end(), b.vars.begin(), b.vars.end()); }
		else { out.push_back(b); }
	}
	for (auto& b : out) {
		std::sort(b.vars.begin(), b.vars.end());
		b.vars.erase(std::unique(b.vars.begin(), b.vars.end()), b.vars.end());
	}
	return out;
}

QbfProblem to_qbf(const QuantifiedProgram& qp) {
	validate(qp);
	auto t = translate(qp.program);
	QbfProblem q{{}, std::move(t.cnf), std::move(t.map)};
	for (const auto& b : qp.prefix) {
		QbfBlock qb{b.kind, {}};
		for (const auto& a : b.atoms) { qb.vars.push_back(q.map.at(a)); }
		q.prefix.push_back(std::move(qb));
	}
	return q;
}

namespace {

class Qdpll {
public:
	Qdpll(const QbfProblem& q, const QbfOptions& opts) : q_(q), opts_(opts) {
		n_ = q.matrix.num_vars;
		for (const auto& b : q.prefix) {
			for (int v : b.vars) { n_ = std::max(n_, v); }
		}
		level_.assign(static_cast<std::size_t>(n_) + 1, static_cast<int>(q.prefix.size()));
		universal_.assign(level_.size(), 0);
		for (std::size_t i = 0; i != q.prefix.size(); ++i) {
			for (int v : q.prefix[i].vars) {
				level_[static_cast<std::size_t>(v)] = static_cast<int>(i);
				universal_[static_cast<std::size_t>(v)] = q.prefix[i].kind == Quantifier::Forall;
			}
		}
		value_.assign(level_.size(), 0);
		pos_.assign(level_.size(), 0);
		neg_.assign(level_.size(), 0);
		witness_mode_ = !q.prefix.empty() && q.prefix[0].kind == Quantifier::Exists;
	}

	SatResult run() {
		SatResult r;
		r.satisfiable = search();
		if (r.satisfiable && witness_mode_) {
			Interpretation w;
			for (std::size_t i = 0; i != q_.prefix[0].vars.size(); ++i) {
				if (!best_[i]) { continue; }
				auto it = q_.map.atom.find(q_.prefix[0].vars[i]);
				if (it != q_.map.atom.end()) { w.insert(it->second); }
			}
			r.witness = std::move(w);
		}
		return r;
	}

private:
	int val(int lit) const {
		int v = value_[static_cast<std::size_t>(std::abs(lit))];
		return lit > 0 ? v : -v;
	}
	void set(int lit) {
		value_[static_cast<std::size_t>(std::abs(lit))] = lit > 0 ? 1 : -1;
		trail_.push_back(std::abs(lit));
	}
	void undo(std::size_t mark) {
		while (trail_.size() > mark) {
			value_[static_cast<std::size_t>(trail_.back())] = 0;
			trail_.pop_back();
		}
	}
	bool univ(int lit) const { return universal_[static_cast<std::size_t>(std::abs(lit))] != 0; }
	int level(int lit) const { return level_[static_cast<std::size_t>(std::abs(lit))]; }

	void record() {
		if (!witness_mode_) { return; }
		best_.clear();
		for (int v : q_.prefix[0].vars) { best_.push_back(value_[static_cast<std::size_t>(v)] > 0); }
	}

	enum class State { Conflict, Satisfied, Open };

	// unit propagation with universal reduction, then pure literals
	State propagate() {
		std::vector<int> buf;
		for (;;) {
			bool changed = false, all_sat = true;
			std::fill(pos_.begin(), pos_.end(), 0);
			std::fill(neg_.begin(), neg_.end(), 0);
			for (const auto& c : q_.matrix.clauses) {
				buf.clear();
				bool sat = false;
				int max_e = -1;
				for (int l : c) {
					int v = val(l);
					if (v > 0) {
						sat = true;
						break;
					}
					if (v == 0) {
						buf.push_back(l);
						if (!univ(l)) { max_e = std::max(max_e, level(l)); }
					}
				}
				if (sat) { continue; }
				all_sat = false;
				int count = 0, unit = 0;
				for (int l : buf) {
					if (univ(l) && level(l) > max_e) { continue; }
					++count;
					unit = l;
				}
				if (count == 0) { return State::Conflict; }
				if (count == 1) {
					set(unit);
					changed = true;
					continue;
				}
				for (int l : buf) { ++(l > 0 ? pos_ : neg_)[static_cast<std::size_t>(std::abs(l))]; }
			}
			if (all_sat) { return State::Satisfied; }
			if (changed) { continue; }
			for (int v = 1; v <= n_; ++v) {
				auto i = static_cast<std::size_t>(v);
				if (value_[i] != 0 || (pos_[i] != 0) == (neg_[i] != 0)) { continue; }
				if (witness_mode_ && level_[i] == 0) { continue; }
				bool positive = pos_[i] != 0;
				set(positive != (universal_[i] != 0) ? v : -v);
				changed = true;
			}
			if (!changed) { return State::Open; }
		}
	}

	bool search() {
		if (++nodes_ > opts_.budget) { throw BudgetExceeded("QBF search exceeds its node budget"); }
		std::size_t mark = trail_.size();
		bool result = false;
		State s = propagate();
		if (s == State::Satisfied) {
			record();
			result = true;
		}
		else if (s == State::Open) {
			int best = 0;
			for (int v = n_; v >= 1; --v) {
				auto i = static_cast<std::size_t>(v);
				if (value_[i] != 0 || (pos_[i] == 0 && neg_[i] == 0)) { continue; }
				if (best == 0 || level_[i] < level_[static_cast<std::size_t>(best)]) { best = v; }
			}
			if (level_[static_cast<std::size_t>(best)] > 0) { record(); }
			bool exists = !univ(best);
			result = !exists;
			for (int lit : {-best, best}) {
				std::size_t m = trail_.size();
				set(lit);
				bool ok = search();
				undo(m);
				if (ok == exists) {
					result = ok;
					break;
				}
			}
		}
		undo(mark);
		return result;
	}

	const QbfProblem& q_;
	QbfOptions opts_;
	int n_ = 0;
	std::vector<int> level_;
	std::vector<char> universal_;
	std::vector<int> value_;
	std::vector<int> pos_, neg_;
	std::vector<int> trail_;
	std::vector<char> best_;
	bool witness_mode_ = false;
	std::uint64_t nodes_ = 0;
};

} // namespace

SatResult solve(const QbfProblem& q, const QbfOptions& opts) { return Qdpll(q, opts).run(); }

} // namespace qasp
