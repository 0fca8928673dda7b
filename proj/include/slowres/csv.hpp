#pragma once

#include "slowres/signal.hpp"

#include <Eigen/Dense>
#include <ostream>
#include <string>
#include <vector>

namespace slowres::csv {

/// Shortest representation that round-trips the double exactly.
std::string format_double(double v);

std::vector<std::string> split_line(const std::string& line);

/// Signal file: header "time,ch0,ch1,...", one row per sample.
void write_signal(std::ostream& os, const SampledSignal& sig);
void write_signal_file(const std::string& path, const SampledSignal& sig);
SampledSignal read_signal_file(const std::string& path);

/// Sparse-friendly matrix file: header "row,col,value", one row per nonzero.
/// Shape is carried in a leading comment line "# rows cols".
void write_matrix_triplets(std::ostream& os, const Eigen::MatrixXd& m);
void write_matrix_triplets_file(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_triplets_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace slowres::csv
