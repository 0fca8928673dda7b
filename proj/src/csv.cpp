#include "slowres/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slowres::csv {

std::string format_double(double v) {
    char buf[64];
    // %.17g always round-trips; prefer the shorter %.15g when it does too.
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    if (std::strtod(buf, nullptr) != v)
        std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

void write_signal(std::ostream& os, const SampledSignal& sig) {
    os << "time";
    for (Eigen::Index c = 0; c < sig.channels(); ++c) os << ",ch" << c;
    os << "\n";
    for (Eigen::Index k = 0; k < sig.samples(); ++k) {
        os << format_double(sig.t0 + sig.dt * static_cast<double>(k));
        for (Eigen::Index c = 0; c < sig.channels(); ++c)
            os << ',' << format_double(sig.values(c, k));
        os << "\n";
    }
}

void write_signal_file(const std::string& path, const SampledSignal& sig) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_signal(os, sig);
}

SampledSignal read_signal_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error(path + ": empty signal file");
    const auto header = split_line(line);
    if (header.empty() || header[0] != "time")
        throw std::runtime_error(path + ":1: expected header starting with 'time'");
    const std::size_t channels = header.size() - 1;
    if (channels == 0)
        throw std::runtime_error(path + ":1: signal file has no channels");

    std::vector<double> times;
    std::vector<std::vector<double>> cols(channels);
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected " + std::to_string(header.size()) + " fields");
        try {
            times.push_back(std::stod(fields[0]));
            for (std::size_t c = 0; c < channels; ++c)
                cols[c].push_back(std::stod(fields[c + 1]));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number");
        }
    }
    if (times.size() < 2)
        throw std::runtime_error(path + ": need at least 2 samples");
    const double dt = times[1] - times[0];
    if (dt <= 0) throw std::runtime_error(path + ": non-increasing time column");
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double expect = times[0] + dt * static_cast<double>(k);
        if (std::abs(times[k] - expect) > 1e-6 * (1.0 + std::abs(expect)))
            throw std::runtime_error(path + ":" + std::to_string(k + 2) +
                                     ": time column is not a regular grid");
    }
    Eigen::MatrixXd values(channels, times.size());
    for (std::size_t c = 0; c < channels; ++c)
        for (std::size_t k = 0; k < times.size(); ++k) values(c, k) = cols[c][k];
    return SampledSignal(times[0], dt, std::move(values));
}

void write_matrix_triplets(std::ostream& os, const Eigen::MatrixXd& m) {
    os << "# " << m.rows() << " " << m.cols() << "\n";
    os << "row,col,value\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0.0)
                os << i << ',' << j << ',' << format_double(m(i, j)) << "\n";
}

void write_matrix_triplets_file(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_matrix_triplets(os, m);
}

Eigen::MatrixXd read_matrix_triplets_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(is, line) || line.size() < 2 || line[0] != '#')
        throw std::runtime_error(path + ":1: expected '# rows cols'");
    std::istringstream shape(line.substr(1));
    Eigen::Index rows = 0, cols = 0;
    if (!(shape >> rows >> cols) || rows < 0 || cols < 0)
        throw std::runtime_error(path + ":1: bad shape line");
    if (!std::getline(is, line) || line != "row,col,value")
        throw std::runtime_error(path + ":2: expected header 'row,col,value'");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    std::size_t lineno = 2;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != 3)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 3 fields");
        try {
            const auto i = static_cast<Eigen::Index>(std::stoll(fields[0]));
            const auto j = static_cast<Eigen::Index>(std::stoll(fields[1]));
            if (i < 0 || i >= rows || j < 0 || j >= cols)
                throw std::out_of_range("index");
            m(i, j) = std::stod(fields[2]);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad triplet");
        }
    }
    return m;
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << text;
}

} // namespace slowres::csv
