#include "permrec/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "permrec/errors.hpp"

namespace permrec {

void write_matrix_dsv(const std::string& path, const DenseMatrix& m) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    char buf[64];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            if (j) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

DenseMatrix read_matrix_dsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    std::vector<double> entries;
    std::size_t rows = 0, cols = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double v;
        std::size_t count = 0;
        while (ls >> v) {
            entries.push_back(v);
            ++count;
        }
        if (count == 0) continue;
        if (cols == 0)
            cols = count;
        else if (count != cols)
            throw ConfigError("ragged matrix file '" + path + "'");
        ++rows;
    }
    return DenseMatrix(rows, cols, std::move(entries));
}

void write_permutation_line(const std::string& path, const Permutation& p) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << p.to_line() << '\n';
}

Permutation read_permutation_line(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    std::string line;
    std::getline(in, line);
    return Permutation::from_line(line);
}

void write_instance(const std::string& tag, const SensingInstance& inst) {
    write_matrix_dsv(tag + "_X.dsv", inst.X);
    write_matrix_dsv(tag + "_B.dsv", inst.B_star);
    write_matrix_dsv(tag + "_W.dsv", inst.W);
    write_matrix_dsv(tag + "_Y.dsv", inst.Y);
    write_permutation_line(tag + "_Pi.txt", inst.Pi_star);
}

}  // namespace permrec
