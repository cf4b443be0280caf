#include "bitpin/problem_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bitpin {

namespace {

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        tokens.push_back(tok);
    }
    return tokens;
}

std::vector<std::string> next_line(std::istream& in, const char* what)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error(std::string("problem file truncated: missing ") + what);
    }
    return split_line(line);
}

Vector parse_row(const std::vector<std::string>& tokens, Eigen::Index expected, const char* what)
{
    if (static_cast<Eigen::Index>(tokens.size()) != expected) {
        throw std::runtime_error(std::string("problem file: ") + what + " has " +
                                 std::to_string(tokens.size()) + " values, expected " +
                                 std::to_string(expected));
    }
    Vector v(expected);
    for (Eigen::Index i = 0; i < expected; ++i) {
        v[i] = parse_double(tokens[static_cast<std::size_t>(i)]);
    }
    return v;
}

template <class Int>
Int parse_int(const std::string& tok, const char* what)
{
    Int value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw std::runtime_error(std::string("problem file: bad ") + what + " '" + tok + "'");
    }
    return value;
}

void write_row(std::ostream& out, const Vector& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) {
            out << ' ';
        }
        out << format_double(v[i]);
    }
    out << '\n';
}

std::ofstream open_for_write(const std::filesystem::path& path)
{
    if (path.empty()) {
        throw std::runtime_error("output path is empty");
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

std::ifstream open_for_read(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    }
    return in;
}

}  // namespace

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double failed");
    }
    return std::string(buf, ptr);
}

double parse_double(std::string_view text)
{
    if (text == "inf" || text == "+inf" || text == "Inf" || text == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("not a number: '" + std::string(text) + "'");
    }
    return value;
}

void write_problem(std::ostream& out, const GeneratedProblem& p)
{
    out << p.n << ' ' << p.m << ' ' << p.K << ' ' << format_double(p.noise.snr) << ' '
        << format_double(p.flips.ratio) << ' ' << p.seed.value << '\n';
    write_row(out, p.signal.x);
    for (Eigen::Index i = 0; i < p.m; ++i) {
        write_row(out, p.U.col(i));
    }
    write_row(out, p.y);
}

void write_problem(const std::filesystem::path& path, const GeneratedProblem& problem)
{
    auto out = open_for_write(path);
    write_problem(out, problem);
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

GeneratedProblem read_problem(std::istream& in)
{
    const auto header = next_line(in, "header");
    if (header.size() != 6) {
        throw std::runtime_error("problem file header must be 'n m K snr flip_ratio seed'");
    }
    GeneratedProblem p;
    p.n = parse_int<Eigen::Index>(header[0], "n");
    p.m = parse_int<Eigen::Index>(header[1], "m");
    p.K = parse_int<Eigen::Index>(header[2], "K");
    p.noise.snr = parse_double(header[3]);
    p.flips.ratio = parse_double(header[4]);
    p.seed.value = parse_int<std::uint64_t>(header[5], "seed");
    if (p.n < 1 || p.m < 1) {
        throw std::runtime_error("problem file: n and m must be positive");
    }

    p.signal.x = parse_row(next_line(in, "signal"), p.n, "signal");
    for (Eigen::Index j = 0; j < p.n; ++j) {
        if (p.signal.x[j] != 0.0) {
            p.signal.support.push_back(j);
        }
    }
    p.U.resize(p.n, p.m);
    for (Eigen::Index i = 0; i < p.m; ++i) {
        p.U.col(i) = parse_row(next_line(in, "measurement vector"), p.n, "measurement vector");
    }
    p.y = parse_row(next_line(in, "signs"), p.m, "signs");
    for (Eigen::Index i = 0; i < p.m; ++i) {
        if (p.y[i] != 1.0 && p.y[i] != -1.0) {
            throw std::runtime_error("problem file: sign " + std::to_string(i) + " is not +-1");
        }
    }
    return p;
}

GeneratedProblem read_problem(const std::filesystem::path& path)
{
    auto in = open_for_read(path);
    return read_problem(in);
}

void write_vector(const std::filesystem::path& path, const Vector& x)
{
    auto out = open_for_write(path);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out << format_double(x[i]) << '\n';
    }
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

Vector read_vector(const std::filesystem::path& path)
{
    auto in = open_for_read(path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto tokens = split_line(line);
        for (const auto& t : tokens) {
            values.push_back(parse_double(t));
        }
    }
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace bitpin
