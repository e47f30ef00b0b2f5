#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qfactor/problem.hpp"

namespace qfactor {

// ---------------------------------------------------------------------------
// Gates and qubit registry
// ---------------------------------------------------------------------------

enum class GateKind : std::uint8_t { X, H, RY, CNOT, CCX, MCX };

inline const char* gate_name(GateKind k) {
    switch (k) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::RY: return "ry";
    case GateKind::CNOT: return "cx";
    case GateKind::CCX: return "ccx";
    default: return "mcx";
    }
}

/// Controls of an MCX carry polarity flags (false = trigger on |0>), the IR
/// form of the X-conjugation drawn around negated controls. `work` names the
/// clean scratch qubits a lowering to Toffolis may use.
struct Gate {
    GateKind kind{GateKind::X};
    int target{0};
    std::vector<int> controls;
    std::vector<bool> polarity;
    double angle{0.0};
    std::vector<int> work;

    static Gate x(int t) { return Gate{GateKind::X, t, {}, {}, 0.0, {}}; }
    static Gate h(int t) { return Gate{GateKind::H, t, {}, {}, 0.0, {}}; }
    static Gate ry(double angle, int t) { return Gate{GateKind::RY, t, {}, {}, angle, {}}; }
    static Gate cx(int c, int t) { return Gate{GateKind::CNOT, t, {c}, {true}, 0.0, {}}; }
    static Gate ccx(int c0, int c1, int t) {
        return Gate{GateKind::CCX, t, {c0, c1}, {true, true}, 0.0, {}};
    }
    static Gate mcx(std::vector<int> controls, std::vector<bool> polarity, int t,
                    std::vector<int> work = {}) {
        return Gate{GateKind::MCX, t, std::move(controls), std::move(polarity), 0.0,
                    std::move(work)};
    }

    friend bool operator==(const Gate& a, const Gate& b) {
        return a.kind == b.kind && a.target == b.target && a.controls == b.controls &&
               a.polarity == b.polarity && a.angle == b.angle && a.work == b.work;
    }
};

struct QubitInfo {
    enum class Role : std::uint8_t { Data, Ancilla, Label };
    Role role{Role::Data};
    Variable var{};  // meaningful for Data qubits
    std::string name;

    friend bool operator==(const QubitInfo&, const QubitInfo&) = default;
};

// ---------------------------------------------------------------------------
// Circuit
// ---------------------------------------------------------------------------

class Circuit {
public:
    int add_data_qubit(Variable v) {
        qubits_.push_back({QubitInfo::Role::Data, v, to_string(v)});
        return static_cast<int>(qubits_.size()) - 1;
    }
    int add_ancilla_qubit(int index) {
        qubits_.push_back({QubitInfo::Role::Ancilla, {}, "a" + std::to_string(index)});
        return static_cast<int>(qubits_.size()) - 1;
    }
    int add_label_qubit(int index) {
        qubits_.push_back({QubitInfo::Role::Label, {}, "L" + std::to_string(index)});
        return static_cast<int>(qubits_.size()) - 1;
    }

    int num_qubits() const { return static_cast<int>(qubits_.size()); }
    const std::vector<QubitInfo>& qubits() const { return qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t gate_count() const { return gates_.size(); }

    void append(Gate g) {
        validate(g);
        gates_.push_back(std::move(g));
    }

    /// Order-preserving concatenation; both circuits must share a registry.
    static Circuit compose(const Circuit& a, const Circuit& b) {
        if (!(a.qubits_ == b.qubits_))
            throw UnknownQubitError("compose requires identical qubit registries");
        Circuit out = a;
        for (const Gate& g : b.gates_) out.append(g);
        return out;
    }

    /// Longest chain under the order where gates sharing any qubit commute
    /// never: standard as-soon-as-possible scheduling depth.
    int depth() const {
        std::vector<int> level(qubits_.size(), 0);
        int result = 0;
        for (const Gate& g : gates_) {
            int d = 0;
            for (int q : touched(g)) d = std::max(d, level[static_cast<std::size_t>(q)]);
            ++d;
            for (int q : touched(g)) level[static_cast<std::size_t>(q)] = d;
            result = std::max(result, d);
        }
        return result;
    }

    std::map<std::string, int> gate_counts() const {
        std::map<std::string, int> counts;
        for (const Gate& g : gates_) ++counts[gate_name(g.kind)];
        return counts;
    }

    /// Expands MCX gates into {x, cx, ccx} using their reserved work qubits;
    /// other gates pass through. Negative controls become X conjugation.
    Circuit lowered() const {
        Circuit out;
        out.qubits_ = qubits_;
        for (const Gate& g : gates_) {
            if (g.kind != GateKind::MCX) {
                out.gates_.push_back(g);
                continue;
            }
            std::vector<int> neg;
            for (std::size_t i = 0; i < g.controls.size(); ++i)
                if (!g.polarity[i]) neg.push_back(g.controls[i]);
            for (int q : neg) out.gates_.push_back(Gate::x(q));
            lower_positive_mcx(out.gates_, g.controls, g.target, g.work);
            for (int q : neg) out.gates_.push_back(Gate::x(q));
        }
        return out;
    }

    std::string to_qasm() const;
    static Circuit from_qasm(const std::string& text);

private:
    std::vector<QubitInfo> qubits_;
    std::vector<Gate> gates_;

    static std::vector<int> touched(const Gate& g) {
        std::vector<int> qs = g.controls;
        qs.insert(qs.end(), g.work.begin(), g.work.end());
        qs.push_back(g.target);
        return qs;
    }

    void validate(const Gate& g) const {
        auto check = [this](int q) {
            if (q < 0 || q >= num_qubits())
                throw UnknownQubitError("gate references unknown qubit " +
                                        std::to_string(q));
        };
        check(g.target);
        for (int q : g.controls) check(q);
        for (int q : g.work) check(q);
        std::vector<int> all = touched(g);
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            throw UnknownQubitError("gate qubits must be distinct");
        if (g.kind == GateKind::CNOT && g.controls.size() != 1)
            throw UnknownQubitError("cx takes one control");
        if (g.kind == GateKind::CCX && g.controls.size() != 2)
            throw UnknownQubitError("ccx takes two controls");
        if (g.kind == GateKind::MCX && g.controls.size() != g.polarity.size())
            throw UnknownQubitError("mcx polarity flags must match controls");
        if (g.kind == GateKind::MCX && g.controls.size() >= 3 &&
            g.work.size() + 2 < g.controls.size())
            throw CapacityError("mcx with " + std::to_string(g.controls.size()) +
                                " controls needs " +
                                std::to_string(g.controls.size() - 2) +
                                " work qubits");
    }

    static void lower_positive_mcx(std::vector<Gate>& out,
                                   const std::vector<int>& controls, int target,
                                   const std::vector<int>& work) {
        const std::size_t k = controls.size();
        if (k == 0) { out.push_back(Gate::x(target)); return; }
        if (k == 1) { out.push_back(Gate::cx(controls[0], target)); return; }
        if (k == 2) { out.push_back(Gate::ccx(controls[0], controls[1], target)); return; }
        // AND-chain into work qubits, final Toffoli, then uncompute.
        std::vector<Gate> compute;
        compute.push_back(Gate::ccx(controls[0], controls[1], work[0]));
        for (std::size_t i = 2; i + 1 < k; ++i)
            compute.push_back(Gate::ccx(controls[i], work[i - 2], work[i - 1]));
        for (const Gate& g : compute) out.push_back(g);
        out.push_back(Gate::ccx(controls[k - 1], work[k - 3], target));
        for (auto it = compute.rbegin(); it != compute.rend(); ++it) out.push_back(*it);
    }
};

// ---------------------------------------------------------------------------
// OpenQASM 2.0 subset
// ---------------------------------------------------------------------------

namespace detail {

struct RegisterLayout {
    // (name, size) in declaration order: data, anc, lab — empty groups omitted.
    std::vector<std::pair<std::string, int>> regs;
    std::vector<std::pair<int, int>> slot_of; // flat id -> (reg index, offset)

    static RegisterLayout from(const std::vector<QubitInfo>& qubits) {
        RegisterLayout lay;
        int counts[3] = {0, 0, 0};
        for (const auto& q : qubits) ++counts[static_cast<int>(q.role)];
        int reg_index[3] = {-1, -1, -1};
        const char* names[3] = {"data", "anc", "lab"};
        for (int r = 0; r < 3; ++r) {
            if (counts[r] == 0) continue;
            reg_index[r] = static_cast<int>(lay.regs.size());
            lay.regs.emplace_back(names[r], counts[r]);
        }
        int offset[3] = {0, 0, 0};
        for (const auto& q : qubits) {
            const int r = static_cast<int>(q.role);
            lay.slot_of.emplace_back(reg_index[r], offset[r]++);
        }
        return lay;
    }

    std::string ref(int flat) const {
        const auto& [reg, off] = slot_of[static_cast<std::size_t>(flat)];
        return regs[static_cast<std::size_t>(reg)].first + "[" + std::to_string(off) + "]";
    }
};

inline std::string format_angle(double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", a);
    return buf;
}

} // namespace detail

inline std::string Circuit::to_qasm() const {
    const Circuit low = lowered();
    const auto lay = detail::RegisterLayout::from(low.qubits());
    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    for (std::size_t i = 0; i < low.qubits().size(); ++i) {
        const auto& q = low.qubits()[i];
        if (q.role == QubitInfo::Role::Data)
            os << "// " << lay.ref(static_cast<int>(i)) << " = " << q.name << "\n";
    }
    for (const auto& [name, size] : lay.regs)
        os << "qreg " << name << "[" << size << "];\n";
    for (const Gate& g : low.gates()) {
        switch (g.kind) {
        case GateKind::X: os << "x " << lay.ref(g.target) << ";\n"; break;
        case GateKind::H: os << "h " << lay.ref(g.target) << ";\n"; break;
        case GateKind::RY:
            os << "ry(" << detail::format_angle(g.angle) << ") "
               << lay.ref(g.target) << ";\n";
            break;
        case GateKind::CNOT:
            os << "cx " << lay.ref(g.controls[0]) << "," << lay.ref(g.target)
               << ";\n";
            break;
        case GateKind::CCX:
            os << "ccx " << lay.ref(g.controls[0]) << "," << lay.ref(g.controls[1])
               << "," << lay.ref(g.target) << ";\n";
            break;
        default:
            throw ParseError("unlowered gate in qasm export", 0);
        }
    }
    return os.str();
}

inline Circuit Circuit::from_qasm(const std::string& text) {
    Circuit c;
    std::map<std::string, std::pair<int, int>> regs; // name -> (base, size)
    std::istringstream is(text);
    std::string line;
    int line_no = 0;

    auto parse_ref = [&](std::string tok) {
        auto strip = [](std::string s) {
            while (!s.empty() &&
                   (s.front() == ' ' || s.front() == '\t' || s.front() == ','))
                s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == ';'))
                s.pop_back();
            return s;
        };
        tok = strip(tok);
        auto lb = tok.find('[');
        auto rb = tok.find(']');
        if (lb == std::string::npos || rb == std::string::npos || rb < lb)
            throw ParseError("expected qubit reference, got '" + tok + "'", line_no);
        const std::string name = tok.substr(0, lb);
        int off = 0;
        try {
            off = std::stoi(tok.substr(lb + 1, rb - lb - 1));
        } catch (const std::exception&) {
            throw ParseError("malformed qubit index in '" + tok + "'", line_no);
        }
        auto it = regs.find(name);
        if (it == regs.end())
            throw ParseError("unknown register '" + name + "'", line_no);
        if (off < 0 || off >= it->second.second)
            throw ParseError("index out of range in '" + tok + "'", line_no);
        return it->second.first + off;
    };

    while (std::getline(is, line)) {
        ++line_no;
        auto comment = line.find("//");
        if (comment != std::string::npos) line = line.substr(0, comment);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        if (op == "OPENQASM" || op == "include") continue;
        if (op == "qreg") {
            std::string decl;
            ls >> decl;
            auto lb = decl.find('[');
            auto rb = decl.find(']');
            if (lb == std::string::npos || rb == std::string::npos)
                throw ParseError("malformed qreg declaration", line_no);
            const std::string name = decl.substr(0, lb);
            const int size = std::stoi(decl.substr(lb + 1, rb - lb - 1));
            const int base = c.num_qubits();
            for (int i = 0; i < size; ++i) {
                if (name == "anc")
                    c.add_ancilla_qubit(i);
                else if (name == "lab")
                    c.add_label_qubit(i + 1);
                else
                    c.add_data_qubit(p_bit(base + i + 1));
            }
            regs[name] = {base, size};
            continue;
        }

        std::string rest;
        std::getline(ls, rest);
        std::vector<std::string> args;
        {
            std::string cur;
            for (char ch : rest) {
                if (ch == ',') { args.push_back(cur); cur.clear(); }
                else cur.push_back(ch);
            }
            if (!cur.empty()) args.push_back(cur);
        }

        if (op == "x" || op == "h") {
            if (args.size() != 1) throw ParseError("'" + op + "' takes one qubit", line_no);
            int t = parse_ref(args[0]);
            c.append(op == "x" ? Gate::x(t) : Gate::h(t));
        } else if (op.rfind("ry(", 0) == 0) {
            std::string angle_text = op.substr(3);
            std::string joined = angle_text;
            for (const auto& a : args) joined += "," + a;
            auto close = joined.find(')');
            if (close == std::string::npos)
                throw ParseError("unterminated ry angle", line_no);
            const double angle = std::strtod(joined.substr(0, close).c_str(), nullptr);
            int t = parse_ref(joined.substr(close + 1));
            c.append(Gate::ry(angle, t));
        } else if (op == "cx") {
            if (args.size() != 2) throw ParseError("'cx' takes two qubits", line_no);
            c.append(Gate::cx(parse_ref(args[0]), parse_ref(args[1])));
        } else if (op == "ccx") {
            if (args.size() != 3) throw ParseError("'ccx' takes three qubits", line_no);
            c.append(Gate::ccx(parse_ref(args[0]), parse_ref(args[1]), parse_ref(args[2])));
        } else {
            throw ParseError("unsupported statement '" + op + "'", line_no);
        }
    }
    return c;
}

} // namespace qfactor
