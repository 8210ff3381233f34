#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kcenter {

/// Immutable S x A sample matrix. Every entry is finite; S >= 1, A >= 1.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::size_t n_samples, std::size_t n_attrs, std::vector<double> values);

    std::size_t n_samples() const { return n_samples_; }
    std::size_t n_attrs() const { return n_attrs_; }

    const double* row_ptr(std::size_t s) const { return values_.data() + s * n_attrs_; }
    std::span<const double> row(std::size_t s) const { return {row_ptr(s), n_attrs_}; }
    double at(std::size_t s, std::size_t a) const { return values_[s * n_attrs_ + a]; }
    const std::vector<double>& values() const { return values_; }

    /// Number of distinct sample points (duplicates are kept in the matrix).
    std::size_t distinct_count() const;

private:
    std::size_t n_samples_ = 0;
    std::size_t n_attrs_ = 0;
    std::vector<double> values_;
};

/// Axis-aligned box, lo_a <= hi_a per attribute. A box with lo[0] > hi[0] is
/// the "empty marker" every consumer treats as an infeasible region.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const { return lo.size(); }
    double range(std::size_t a) const { return hi[a] - lo[a]; }
    double midpoint(std::size_t a) const { return (lo[a] + hi[a]) * 0.5; }
    bool contains(const double* x) const;
    bool contains(std::span<const double> x) const { return contains(x.data()); }
    bool is_empty_marker() const { return !lo.empty() && lo[0] > hi[0]; }
    bool degenerate() const;

    static Box empty_marker(std::size_t dims);
};

bool operator==(const Box& a, const Box& b);

/// K boxes, one per cluster center; the object the solver branches on.
struct CenterRegion {
    std::vector<Box> boxes;

    std::size_t k() const { return boxes.size(); }
    std::size_t dim() const { return boxes.empty() ? 0 : boxes.front().dim(); }
};

/// Parse a comma-delimited numeric file, one sample per line. Errors name the
/// offending row and column (1-based, counting the header if present).
Dataset load_csv(const std::string& path, bool has_header);

/// Full-precision writer; load_csv(write_csv(d)) reproduces d exactly.
void write_csv(const Dataset& d, const std::string& path);

/// n samples from k_clusters isotropic unit-variance Gaussians whose means are
/// drawn uniformly in [0, 100]^n_attrs. Bitwise reproducible for a fixed seed.
Dataset generate_gaussian(std::size_t n, std::size_t k_clusters, std::size_t n_attrs,
                          std::uint64_t seed);

/// K copies of the per-attribute min/max bounding box of the data.
CenterRegion root_region(const Dataset& d, std::size_t k);

}  // namespace kcenter
