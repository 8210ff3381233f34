#include "kcenter/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kcenter/rng.hpp"

namespace kcenter {

Dataset::Dataset(std::size_t n_samples, std::size_t n_attrs, std::vector<double> values)
    : n_samples_(n_samples), n_attrs_(n_attrs), values_(std::move(values)) {
    if (n_samples_ < 1 || n_attrs_ < 1) {
        throw std::invalid_argument("dataset must have at least one sample and one attribute");
    }
    if (values_.size() != n_samples_ * n_attrs_) {
        throw std::invalid_argument("dataset value buffer does not match its shape");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::invalid_argument("dataset contains a non-finite value");
    }
}

std::size_t Dataset::distinct_count() const {
    std::vector<std::size_t> order(n_samples_);
    std::iota(order.begin(), order.end(), 0);
    auto cmp = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(row_ptr(a), row_ptr(a) + n_attrs_, row_ptr(b),
                                            row_ptr(b) + n_attrs_);
    };
    std::sort(order.begin(), order.end(), cmp);
    std::size_t distinct = 1;
    for (std::size_t i = 1; i < n_samples_; ++i) {
        if (!std::equal(row_ptr(order[i - 1]), row_ptr(order[i - 1]) + n_attrs_,
                        row_ptr(order[i]))) {
            ++distinct;
        }
    }
    return distinct;
}

bool Box::contains(const double* x) const {
    for (std::size_t a = 0; a < lo.size(); ++a) {
        if (x[a] < lo[a] || x[a] > hi[a]) return false;
    }
    return true;
}

bool Box::degenerate() const {
    for (std::size_t a = 0; a < lo.size(); ++a) {
        if (lo[a] != hi[a]) return false;
    }
    return true;
}

Box Box::empty_marker(std::size_t dims) {
    Box b;
    b.lo.assign(dims, 1.0);
    b.hi.assign(dims, 0.0);
    return b;
}

bool operator==(const Box& a, const Box& b) { return a.lo == b.lo && a.hi == b.hi; }

namespace {

double parse_field(const std::string& field, std::size_t line_no, std::size_t col_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;  // tolerate trailing spaces
    if (end == begin || (end && *end != '\0')) {
        std::ostringstream os;
        os << "non-numeric field at row " << line_no << ", column " << col_no << ": '" << field
           << "'";
        throw std::runtime_error(os.str());
    }
    if (errno == ERANGE || !std::isfinite(v)) {
        std::ostringstream os;
        os << "value out of range at row " << line_no << ", column " << col_no;
        throw std::runtime_error(os.str());
    }
    return v;
}

}  // namespace

Dataset load_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::vector<double> values;
    std::size_t n_attrs = 0;
    std::size_t n_rows = 0;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (has_header && line_no == 1) continue;
        if (line.empty()) continue;

        std::size_t cols = 0;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            const std::string field = line.substr(pos, comma == std::string::npos
                                                           ? std::string::npos
                                                           : comma - pos);
            ++cols;
            values.push_back(parse_field(field, line_no, cols));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (n_rows == 0) {
            n_attrs = cols;
        } else if (cols != n_attrs) {
            std::ostringstream os;
            os << "ragged row " << line_no << ": expected " << n_attrs << " fields, got " << cols;
            throw std::runtime_error(os.str());
        }
        ++n_rows;
    }
    if (n_rows == 0) throw std::runtime_error("no data rows in file: " + path);
    return Dataset(n_rows, n_attrs, std::move(values));
}

void write_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    char buf[40];
    for (std::size_t s = 0; s < d.n_samples(); ++s) {
        for (std::size_t a = 0; a < d.n_attrs(); ++a) {
            std::snprintf(buf, sizeof(buf), "%.17g", d.at(s, a));
            if (a) out << ',';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Dataset generate_gaussian(std::size_t n, std::size_t k_clusters, std::size_t n_attrs,
                          std::uint64_t seed) {
    if (k_clusters < 1 || n < k_clusters) {
        throw std::invalid_argument("need n >= k_clusters >= 1 for the synthetic generator");
    }
    if (n_attrs < 1) throw std::invalid_argument("n_attrs must be positive");

    // Means uniform in [0, 100]^A, isotropic unit variance around them.
    Rng rng(seed);
    std::vector<double> means(k_clusters * n_attrs);
    for (double& m : means) m = rng.uniform(0.0, 100.0);

    std::vector<double> values(n * n_attrs);
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t c = s % k_clusters;
        for (std::size_t a = 0; a < n_attrs; ++a) {
            values[s * n_attrs + a] = means[c * n_attrs + a] + rng.normal();
        }
    }
    return Dataset(n, n_attrs, std::move(values));
}

CenterRegion root_region(const Dataset& d, std::size_t k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    Box b;
    b.lo.assign(d.n_attrs(), 0.0);
    b.hi.assign(d.n_attrs(), 0.0);
    for (std::size_t a = 0; a < d.n_attrs(); ++a) {
        double lo = d.at(0, a), hi = d.at(0, a);
        for (std::size_t s = 1; s < d.n_samples(); ++s) {
            lo = std::min(lo, d.at(s, a));
            hi = std::max(hi, d.at(s, a));
        }
        b.lo[a] = lo;
        b.hi[a] = hi;
    }
    CenterRegion m;
    m.boxes.assign(k, b);
    return m;
}

}  // namespace kcenter
