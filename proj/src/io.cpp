#include "sigmmd/io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "sigmmd/errors.hpp"

namespace sigmmd {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw IoError("dataset csv line " + std::to_string(line_no) + ": cannot parse number '" + s + "'");
    }
}

} // namespace

void write_dataset_csv(std::ostream& out, const std::vector<PathSample>& samples) {
    if (samples.empty()) throw ArgumentError("write_dataset_csv: no samples");
    const std::size_t d = samples.front().dim();
    out << "sample_id,t";
    for (std::size_t k = 1; k <= d; ++k) out << ",x" << k;
    out << '\n';
    out << std::setprecision(17);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& p = samples[s];
        if (p.dim() != d) throw StructuralError("write_dataset_csv: samples differ in dimension");
        for (std::size_t i = 0; i < p.size(); ++i) {
            out << s << ',' << p.times()[i];
            for (std::size_t k = 0; k < d; ++k) {
                out << ',' << p.points()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            }
            out << '\n';
        }
    }
}

void write_dataset_csv(const std::string& path, const std::vector<PathSample>& samples) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_dataset_csv(out, samples);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<PathSample> read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("dataset csv: empty input");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "sample_id" || header[1] != "t") {
        throw IoError("dataset csv: header must be sample_id,t,x1,...,xd");
    }
    const std::size_t d = header.size() - 2;

    std::vector<PathSample> out;
    long current = -1;
    std::vector<double> times;
    std::vector<double> coords;
    auto flush = [&]() {
        if (times.empty()) return;
        RowMatrix pts(static_cast<Eigen::Index>(times.size()), static_cast<Eigen::Index>(d));
        std::copy(coords.begin(), coords.end(), pts.data());
        out.emplace_back(std::move(times), std::move(pts));
        times.clear();
        coords.clear();
    };

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != d + 2) {
            throw IoError("dataset csv line " + std::to_string(line_no) + ": expected " +
                          std::to_string(d + 2) + " fields");
        }
        const long id = static_cast<long>(parse_double(fields[0], line_no));
        if (id != current) {
            if (id != current + 1) {
                throw IoError("dataset csv line " + std::to_string(line_no) +
                              ": sample ids must be consecutive from 0");
            }
            flush();
            current = id;
        }
        times.push_back(parse_double(fields[1], line_no));
        for (std::size_t k = 0; k < d; ++k) coords.push_back(parse_double(fields[k + 2], line_no));
    }
    flush();
    if (out.empty()) throw IoError("dataset csv: no samples");
    return out;
}

std::vector<PathSample> read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_dataset_csv(in);
}

} // namespace sigmmd
