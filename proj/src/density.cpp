#include "bgbench/density.hpp"

#include <cstdio>
#include <cstdlib>

#include "bgbench/pnm.hpp"

namespace bgbench {

PerspectiveWeights build_weights(int height, double lambda) {
    if (height < 1)
        throw Error(ErrorCode::InvalidParams, "height must be >= 1");
    if (!(lambda >= 1.0))
        throw Error(ErrorCode::InvalidLambda,
                    "lambda must be >= 1, got " + std::to_string(lambda));
    PerspectiveWeights w;
    w.height = height;
    w.lambda = lambda;
    w.weights.resize(static_cast<std::size_t>(height));
    if (height == 1) {
        w.weights[0] = 1.0;
        return w;
    }
    for (int r = 0; r < height; ++r)
        w.weights[static_cast<std::size_t>(r)] =
            1.0 + (lambda - 1.0) * (1.0 - static_cast<double>(r) / (height - 1));
    return w;
}

double weighted_density(const ForegroundMask& mask, const PerspectiveWeights& w) {
    if (mask.height != w.height)
        throw Error(ErrorCode::DimensionMismatch,
                    "mask height " + std::to_string(mask.height) + " vs weights height " +
                        std::to_string(w.height));
    double num = 0.0, den = 0.0;
    for (int r = 0; r < mask.height; ++r) {
        const double wr = w.weights[static_cast<std::size_t>(r)];
        den += wr * mask.width;
        for (int c = 0; c < mask.width; ++c)
            if (mask.at(r, c))
                num += wr;
    }
    return num / den;
}

namespace {

std::string format_density(double d) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9f", d);
    return buf;
}

} // namespace

std::string density_csv(const std::vector<DensityRecord>& records) {
    std::string out = "image,algorithm,density,elapsed_us\n";
    for (const auto& r : records) {
        out += r.frame_id;
        out += ',';
        out += to_string(r.algorithm);
        out += ',';
        out += format_density(r.density);
        out += ',';
        out += std::to_string(r.elapsed_us);
        out += '\n';
    }
    return out;
}

std::string density_csv_untimed(const std::vector<DensityRecord>& records) {
    std::string out = "image,algorithm,density\n";
    for (const auto& r : records) {
        out += r.frame_id;
        out += ',';
        out += to_string(r.algorithm);
        out += ',';
        out += format_density(r.density);
        out += '\n';
    }
    return out;
}

std::vector<DensityRecord> parse_density_csv(const std::string& text) {
    std::vector<DensityRecord> records;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos)
            eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (first) {
            first = false;
            if (line != "image,algorithm,density,elapsed_us" &&
                line != "image,algorithm,density")
                throw Error(ErrorCode::MalformedRow, "unexpected density CSV header: " + line);
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(start));
                break;
            }
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (fields.size() != 3 && fields.size() != 4)
            throw Error(ErrorCode::MalformedRow, "bad density CSV row: " + line);

        DensityRecord r;
        r.frame_id = fields[0];
        r.algorithm = algorithm_from_string(fields[1]);
        char* end = nullptr;
        r.density = std::strtod(fields[2].c_str(), &end);
        if (end == fields[2].c_str() || *end != '\0')
            throw Error(ErrorCode::MalformedRow, "bad density value: " + fields[2]);
        if (fields.size() == 4) {
            r.elapsed_us = std::strtoll(fields[3].c_str(), &end, 10);
            if (end == fields[3].c_str() || *end != '\0')
                throw Error(ErrorCode::MalformedRow, "bad elapsed value: " + fields[3]);
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<DensityRecord> load_density_csv(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    return parse_density_csv(std::string(bytes.begin(), bytes.end()));
}

} // namespace bgbench
