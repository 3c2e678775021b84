#include <cctype>
#include <cstdio>
#include <sstream>

#include "eisglm/tableau.hpp"

// Coefficient file format (UTF-8, line oriented, '#' starts a comment):
//
//   name <string>
//   s <int>
//   p <int>
//   P <int>
//   kind EIS|EIS+
//   family explicit|ssp|implicit
//   ssp_coeff <float>          (optional)
//   D:                         (then s lines of s decimals; same for
//   A: Ahat: R: Rhat:           the other four blocks)
//   tau:                       (optional, one line of s decimals)

namespace eisglm {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Line {
    int number;
    std::string text;
};

std::vector<Line> significant_lines(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        const auto begin = raw.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = raw.find_last_not_of(" \t\r");
        lines.push_back({number, raw.substr(begin, end - begin + 1)});
    }
    return lines;
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) parse_fail(line, "trailing junk in number '" + tok + "'");
        return v;
    } catch (const std::invalid_argument&) {
        parse_fail(line, "expected a number, got '" + tok + "'");
    } catch (const std::out_of_range&) {
        parse_fail(line, "number out of range: '" + tok + "'");
    }
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

} // namespace

MethodTableau load_tableau(const std::string& text) {
    const auto lines = significant_lines(text);
    if (lines.empty()) throw ParseError("line 1: empty coefficient file");

    MethodTableau t;
    bool have_s = false, have_p = false, have_P = false, have_kind = false,
         have_family = false, have_name = false;
    std::size_t i = 0;

    auto read_matrix_block = [&](const std::string& label) -> Eigen::MatrixXd {
        if (!have_s) parse_fail(lines[i].number, "matrix block before 's'");
        Eigen::MatrixXd m(t.s, t.s);
        for (int r = 0; r < t.s; ++r) {
            if (i >= lines.size())
                parse_fail(lines.back().number,
                           "unexpected end of file inside block " + label);
            const auto toks = tokens(lines[i].text);
            if (static_cast<int>(toks.size()) != t.s)
                parse_fail(lines[i].number, "block " + label + " row needs " +
                                                std::to_string(t.s) + " values");
            for (int cidx = 0; cidx < t.s; ++cidx)
                m(r, cidx) = parse_double(toks[cidx], lines[i].number);
            ++i;
        }
        return m;
    };

    bool have_D = false, have_A = false, have_Ahat = false, have_R = false,
         have_Rhat = false;
    while (i < lines.size()) {
        const auto& [number, text_line] = lines[i];
        const auto toks = tokens(text_line);
        const std::string& key = toks[0];
        if (key == "name") {
            if (toks.size() != 2) parse_fail(number, "name takes one token");
            t.name = toks[1];
            have_name = true;
            ++i;
        } else if (key == "s" || key == "p" || key == "P") {
            if (toks.size() != 2) parse_fail(number, key + " takes one integer");
            int v = 0;
            try {
                v = std::stoi(toks[1]);
            } catch (...) {
                parse_fail(number, "bad integer '" + toks[1] + "'");
            }
            if (key == "s") {
                if (v < 1) parse_fail(number, "s must be positive");
                t.s = v;
                have_s = true;
            } else if (key == "p") {
                t.p = v;
                have_p = true;
            } else {
                t.P = v;
                have_P = true;
            }
            ++i;
        } else if (key == "kind") {
            if (toks.size() != 2 || (toks[1] != "EIS" && toks[1] != "EIS+"))
                parse_fail(number, "kind must be EIS or EIS+");
            t.kind = toks[1] == "EIS" ? MethodKind::Eis : MethodKind::EisPlus;
            have_kind = true;
            ++i;
        } else if (key == "family") {
            if (toks.size() != 2) parse_fail(number, "family takes one token");
            if (toks[1] == "explicit")
                t.family = MethodFamily::Explicit;
            else if (toks[1] == "ssp")
                t.family = MethodFamily::ExplicitSsp;
            else if (toks[1] == "implicit")
                t.family = MethodFamily::Implicit;
            else
                parse_fail(number, "family must be explicit, ssp or implicit");
            have_family = true;
            ++i;
        } else if (key == "ssp_coeff") {
            if (toks.size() != 2) parse_fail(number, "ssp_coeff takes one value");
            t.ssp_coefficient = parse_double(toks[1], number);
            ++i;
        } else if (key == "D:" || key == "A:" || key == "Ahat:" ||
                   key == "R:" || key == "Rhat:") {
            ++i;
            if (key == "D:") { t.D = read_matrix_block("D"); have_D = true; }
            else if (key == "A:") { t.A = read_matrix_block("A"); have_A = true; }
            else if (key == "Ahat:") { t.Ahat = read_matrix_block("Ahat"); have_Ahat = true; }
            else if (key == "R:") { t.R = read_matrix_block("R"); have_R = true; }
            else { t.Rhat = read_matrix_block("Rhat"); have_Rhat = true; }
        } else if (key == "tau:") {
            ++i;
            if (i >= lines.size())
                parse_fail(number, "tau: block missing its value line");
            const auto vals = tokens(lines[i].text);
            if (static_cast<int>(vals.size()) != t.s)
                parse_fail(lines[i].number, "tau needs s values");
            Eigen::VectorXd tau(t.s);
            for (int k = 0; k < t.s; ++k)
                tau(k) = parse_double(vals[k], lines[i].number);
            t.stored_tau = tau;
            ++i;
        } else {
            parse_fail(number, "unrecognized key '" + key + "'");
        }
    }

    const int last = lines.back().number;
    if (!have_name) parse_fail(last, "missing 'name'");
    if (!have_s) parse_fail(last, "missing 's'");
    if (!have_p) parse_fail(last, "missing 'p'");
    if (!have_P) parse_fail(last, "missing 'P'");
    if (!have_kind) parse_fail(last, "missing 'kind'");
    if (!have_family) parse_fail(last, "missing 'family'");
    if (!have_D || !have_A || !have_Ahat || !have_R || !have_Rhat)
        parse_fail(last, "missing one of the D/A/Ahat/R/Rhat blocks");

    t.c = recover_abscissas(t.D, t.A, t.R);
    validate(t);
    return t;
}

std::string save_tableau(const MethodTableau& t) {
    std::ostringstream out;
    out << "name " << t.name << "\n";
    out << "s " << t.s << "\n";
    out << "p " << t.p << "\n";
    out << "P " << t.P << "\n";
    out << "kind " << to_string(t.kind) << "\n";
    out << "family " << to_string(t.family) << "\n";
    if (t.ssp_coefficient)
        out << "ssp_coeff " << fmt17(*t.ssp_coefficient) << "\n";
    const auto block = [&](const char* label, const Eigen::MatrixXd& m) {
        out << label << ":\n";
        for (int i = 0; i < t.s; ++i) {
            for (int j = 0; j < t.s; ++j)
                out << (j ? " " : "") << fmt17(m(i, j));
            out << "\n";
        }
    };
    block("D", t.D);
    block("A", t.A);
    block("Ahat", t.Ahat);
    block("R", t.R);
    block("Rhat", t.Rhat);
    if (t.stored_tau) {
        out << "tau:\n";
        for (int j = 0; j < t.s; ++j)
            out << (j ? " " : "") << fmt17((*t.stored_tau)(j));
        out << "\n";
    }
    return out.str();
}

} // namespace eisglm
