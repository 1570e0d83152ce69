#include "onm/signal_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace onm {

namespace {

constexpr std::array<char, 8> magic = {'O', 'N', 'M', 'T', '0', '0', '0', '1'};

void put_f64(std::ostream& out, double v)
{
    auto bits = std::bit_cast<std::uint64_t>(v);
    std::array<char, 8> bytes{};
    for (auto& b : bytes) {
        b = static_cast<char>(bits & 0xFFu);
        bits >>= 8;
    }
    out.write(bytes.data(), bytes.size());
}

bool get_f64(std::istream& in, double& v)
{
    std::array<unsigned char, 8> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
        return false;
    }
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) {
        bits = (bits << 8) | bytes[static_cast<std::size_t>(i)];
    }
    v = std::bit_cast<double>(bits);
    return true;
}

std::string format_g17(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

SignalFormat parse_signal_format(const std::string& name)
{
    if (name == "csv") return SignalFormat::csv;
    if (name == "bin" || name == "binary") return SignalFormat::binary;
    throw std::invalid_argument("unknown signal format '" + name + "' (expected csv or bin)");
}

const char* file_extension(SignalFormat format) noexcept
{
    return format == SignalFormat::csv ? ".csv" : ".bin";
}

void write_csv(std::ostream& out, const Signal& x)
{
    out << "t,amplitude\n";
    const double rate = x.sample_rate();
    for (std::size_t i = 0; i < x.size(); ++i) {
        out << format_g17(static_cast<double>(i) / rate) << ',' << format_g17(x[i]) << '\n';
    }
}

Signal read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty CSV input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "t,amplitude") {
        throw std::invalid_argument("CSV header must be 't,amplitude'");
    }
    std::vector<double> t, a;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("CSV row " + std::to_string(row) + " has no comma");
        }
        try {
            t.push_back(std::stod(line.substr(0, comma)));
            a.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("CSV row " + std::to_string(row) + " is not numeric");
        }
    }
    if (t.size() < 2) {
        throw std::invalid_argument("CSV needs at least two samples to recover the sample rate");
    }
    const double span = t.back() - t.front();
    if (!(span > 0.0)) {
        throw std::invalid_argument("CSV time column must be increasing");
    }
    const double rate = static_cast<double>(t.size() - 1) / span;
    return Signal(std::move(a), rate);
}

void write_binary(std::ostream& out, const Signal& x)
{
    out.write(magic.data(), magic.size());
    put_f64(out, x.sample_rate());
    for (double v : x.samples()) {
        put_f64(out, v);
    }
}

Signal read_binary(std::istream& in)
{
    std::array<char, 8> head{};
    if (!in.read(head.data(), head.size()) || head != magic) {
        throw std::invalid_argument("missing ONMT0001 header");
    }
    double rate = 0.0;
    if (!get_f64(in, rate)) {
        throw std::invalid_argument("truncated binary header");
    }
    std::vector<double> samples;
    double v = 0.0;
    while (get_f64(in, v)) {
        samples.push_back(v);
    }
    if (in.gcount() != 0) {
        throw std::invalid_argument("binary payload is not a whole number of float64 samples");
    }
    return Signal(std::move(samples), rate);
}

void write_signal(const std::string& path, const Signal& x, SignalFormat format)
{
    std::ofstream out(path, format == SignalFormat::binary ? std::ios::binary : std::ios::out);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    if (format == SignalFormat::csv) {
        write_csv(out, x);
    } else {
        write_binary(out, x);
    }
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

Signal read_signal(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::array<char, 8> head{};
    in.read(head.data(), head.size());
    const bool is_binary = in.gcount() == 8 && head == magic;
    in.clear();
    in.seekg(0);
    return is_binary ? read_binary(in) : read_csv(in);
}

} // namespace onm
