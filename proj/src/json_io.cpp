#include "latcode/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latcode {

namespace {

void dump_rec(const Json& j, std::string& out, int depth) {
    auto indent = [&](int d) { out.append(static_cast<size_t>(d) * 2, ' '); };
    switch (j.type()) {
        case nlohmann::detail::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                indent(depth + 1);
                out += Json(it.key()).dump();
                out += ": ";
                dump_rec(it.value(), out, depth + 1);
            }
            out += "\n";
            indent(depth);
            out += "}";
            return;
        }
        case nlohmann::detail::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ",\n";
                first = false;
                indent(depth + 1);
                dump_rec(el, out, depth + 1);
            }
            out += "\n";
            indent(depth);
            out += "]";
            return;
        }
        case nlohmann::detail::value_t::number_float: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            out += buf;
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

} // namespace

std::string stable_dump(const Json& j) {
    std::string out;
    dump_rec(j, out, 0);
    out += "\n";
    return out;
}

Json lattice_to_json(const Lattice& l) {
    Json j;
    j["ambient_dim"] = l.ambient_dim();
    Json cols = Json::array();
    const QMat& b = l.basis();
    for (int c = 0; c < b.cols; ++c) {
        Json col = Json::array();
        for (int r = 0; r < b.rows; ++r) col.push_back(rat_to_string(b(r, c)));
        cols.push_back(std::move(col));
    }
    j["basis_columns"] = std::move(cols);
    j["integral"] = l.integral();
    return j;
}

Lattice lattice_from_json(const Json& j) {
    int n = j.at("ambient_dim").get<int>();
    const auto& cols = j.at("basis_columns");
    if (!cols.is_array() || cols.empty()) throw std::invalid_argument("lattice json: no columns");
    QMat b(n, static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
        if (static_cast<int>(cols[c].size()) != n)
            throw std::invalid_argument("lattice json: column length mismatch");
        for (int r = 0; r < n; ++r) b(r, static_cast<int>(c)) = rat_from_string(cols[c][r].get<std::string>());
    }
    Lattice l = Lattice::from_basis(std::move(b));
    if (j.contains("integral") && j.at("integral").get<bool>() != l.integral())
        throw std::invalid_argument("lattice json: integral flag contradicts the basis");
    return l;
}

Json lda_to_json(const LdaLattice& l, std::uint64_t seed) {
    Json j;
    j["n"] = l.n();
    j["k"] = l.k();
    j["p"] = l.p();
    j["seed"] = seed;
    Json g = Json::array();
    for (int i = 0; i < l.n(); ++i) {
        Json row = Json::array();
        for (int c = 0; c < l.k(); ++c) row.push_back(l.generator().at(i, c));
        g.push_back(std::move(row));
    }
    j["generator"] = std::move(g);
    j["volume"] = rat_to_string(l.lattice().vol2()); // squared volume, exact
    j["lattice"] = lattice_to_json(l.lattice());
    return j;
}

Json code_to_json(const CssCode& c) {
    Json j;
    j["d"] = c.d;
    j["N"] = c.nqubits;
    Json zs = Json::array();
    for (int s = 0; s < c.d2.cols; ++s) {
        Json stab = Json::array();
        for (auto [qubit, power] : c.d2.entries[s]) stab.push_back(Json::array({qubit, power}));
        zs.push_back(std::move(stab));
    }
    j["z_stabilizers"] = std::move(zs);
    // d1 is stored column-major (per qubit); emit row-major stabilizer lists
    std::vector<std::vector<std::pair<int, std::uint32_t>>> rows(c.d1.rows);
    for (int q = 0; q < c.d1.cols; ++q)
        for (auto [row, power] : c.d1.entries[q]) rows[row].push_back({q, power});
    Json xs = Json::array();
    for (auto& r : rows) {
        Json stab = Json::array();
        for (auto [qubit, power] : r) stab.push_back(Json::array({qubit, power}));
        xs.push_back(std::move(stab));
    }
    j["x_stabilizers"] = std::move(xs);
    return j;
}

CssCode code_from_json(const Json& j) {
    CssCode c;
    c.d = j.at("d").get<std::uint32_t>();
    c.nqubits = j.at("N").get<int>();
    const auto& zs = j.at("z_stabilizers");
    c.d2 = SparseMat(c.nqubits, static_cast<int>(zs.size()));
    for (size_t s = 0; s < zs.size(); ++s) {
        for (const auto& e : zs[s])
            c.d2.entries[s].push_back({e[0].get<int>(), e[1].get<std::uint32_t>()});
        std::sort(c.d2.entries[s].begin(), c.d2.entries[s].end());
    }
    const auto& xs = j.at("x_stabilizers");
    c.d1 = SparseMat(static_cast<int>(xs.size()), c.nqubits);
    for (size_t s = 0; s < xs.size(); ++s)
        for (const auto& e : xs[s])
            c.d1.entries[e[0].get<int>()].push_back({static_cast<int>(s), e[1].get<std::uint32_t>()});
    for (auto& col : c.d1.entries) std::sort(col.begin(), col.end());
    c.check_commutation();
    return c;
}

std::string alist_export(const SparseMat& m) {
    // m: columns = qubits? No: columns = matrix columns; rows = checks.
    std::ostringstream s;
    s << m.cols << " " << m.rows << "\n";
    std::vector<int> row_deg(m.rows, 0);
    int max_col = 0;
    for (int j = 0; j < m.cols; ++j) {
        max_col = std::max(max_col, static_cast<int>(m.entries[j].size()));
        for (auto [row, c] : m.entries[j]) {
            (void)c;
            ++row_deg[row];
        }
    }
    int max_row = 0;
    for (int d : row_deg) max_row = std::max(max_row, d);
    s << max_col << " " << max_row << "\n";
    for (int j = 0; j < m.cols; ++j) s << m.entries[j].size() << (j + 1 < m.cols ? " " : "\n");
    if (m.cols == 0) s << "\n";
    for (int i = 0; i < m.rows; ++i) s << row_deg[i] << (i + 1 < m.rows ? " " : "\n");
    if (m.rows == 0) s << "\n";
    for (int j = 0; j < m.cols; ++j) {
        for (size_t e = 0; e < m.entries[j].size(); ++e)
            s << m.entries[j][e].first + 1 << (e + 1 < m.entries[j].size() ? " " : "");
        s << "\n";
    }
    std::vector<std::vector<int>> rows(m.rows);
    for (int j = 0; j < m.cols; ++j)
        for (auto [row, c] : m.entries[j]) {
            (void)c;
            rows[row].push_back(j);
        }
    for (int i = 0; i < m.rows; ++i) {
        for (size_t e = 0; e < rows[i].size(); ++e) s << rows[i][e] + 1 << (e + 1 < rows[i].size() ? " " : "");
        s << "\n";
    }
    return s.str();
}

std::string alist_export_z(const CssCode& c) {
    // d2 transposed: rows = Z stabilizers, columns = qubits
    SparseMat t(c.d2.cols, c.nqubits);
    for (int s = 0; s < c.d2.cols; ++s)
        for (auto [qubit, power] : c.d2.entries[s]) t.entries[qubit].push_back({s, power});
    for (auto& col : t.entries) std::sort(col.begin(), col.end());
    return alist_export(t);
}

std::string alist_export_x(const CssCode& c) { return alist_export(c.d1); }

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << contents;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace latcode
