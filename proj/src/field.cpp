#include "phasewig/field.hpp"

#include <cmath>

namespace phasewig::numgrid {

int shape_size(const PhaseGrid& g, FieldShape s) {
    switch (s) {
        case FieldShape::OverQ: return g.q.n;
        case FieldShape::OverP: return g.p.n;
        case FieldShape::OverQP: return g.q.n * g.p.n;
    }
    return 0;
}

Field::Field(PhaseGrid grid, FieldShape shape)
    : grid_(std::move(grid)), shape_(shape), v_(shape_size(grid_, shape)) {}

Field::Field(PhaseGrid grid, FieldShape shape, std::vector<cd> values)
    : grid_(std::move(grid)), shape_(shape), v_(std::move(values)) {
    if (static_cast<int>(v_.size()) != shape_size(grid_, shape_))
        throw ShapeMismatchError("Field: sample count does not match grid shape");
}

bool Field::has_axis(Axis a) const {
    if (shape_ == FieldShape::OverQP) return true;
    return (a == Axis::Q) ? shape_ == FieldShape::OverQ : shape_ == FieldShape::OverP;
}

double Field::max_abs() const {
    double m = 0.0;
    for (const auto& x : v_) m = std::max(m, std::abs(x));
    return m;
}

bool Field::all_finite() const {
    for (const auto& x : v_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

void Field::require_same_layout(const Field& other, const char* who) const {
    if (!(grid_ == other.grid_) || shape_ != other.shape_)
        throw ShapeMismatchError(std::string(who) + ": fields live on different grids or shapes");
}

RealField::RealField(PhaseGrid grid, FieldShape shape)
    : grid_(std::move(grid)), shape_(shape), v_(shape_size(grid_, shape)) {}

RealField::RealField(PhaseGrid grid, FieldShape shape, std::vector<double> values)
    : grid_(std::move(grid)), shape_(shape), v_(std::move(values)) {
    if (static_cast<int>(v_.size()) != shape_size(grid_, shape_))
        throw ShapeMismatchError("RealField: sample count does not match grid shape");
}

double RealField::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

bool RealField::all_finite() const {
    for (double x : v_)
        if (!std::isfinite(x)) return false;
    return true;
}

void RealField::require_same_layout(const RealField& other, const char* who) const {
    if (!(grid_ == other.grid_) || shape_ != other.shape_)
        throw ShapeMismatchError(std::string(who) + ": fields live on different grids or shapes");
}

Field RealField::to_complex() const {
    std::vector<cd> out(v_.size());
    for (std::size_t k = 0; k < v_.size(); ++k) out[k] = cd(v_[k], 0.0);
    return Field(grid_, shape_, std::move(out));
}

Field operator+(const Field& a, const Field& b) {
    a.require_same_layout(b, "operator+");
    std::vector<cd> out(a.values());
    for (int k = 0; k < b.size(); ++k) out[k] += b[k];
    return Field(a.grid(), a.shape(), std::move(out));
}

Field operator-(const Field& a, const Field& b) {
    a.require_same_layout(b, "operator-");
    std::vector<cd> out(a.values());
    for (int k = 0; k < b.size(); ++k) out[k] -= b[k];
    return Field(a.grid(), a.shape(), std::move(out));
}

Field operator*(const Field& a, cd s) {
    std::vector<cd> out(a.values());
    for (auto& x : out) x *= s;
    return Field(a.grid(), a.shape(), std::move(out));
}

Field operator*(cd s, const Field& a) { return a * s; }

Field hadamard(const Field& a, const Field& b) {
    a.require_same_layout(b, "hadamard");
    std::vector<cd> out(a.values());
    for (int k = 0; k < b.size(); ++k) out[k] *= b[k];
    return Field(a.grid(), a.shape(), std::move(out));
}

Field hadamard(const RealField& a, const Field& b) {
    if (!(a.grid() == b.grid()) || a.shape() != b.shape())
        throw ShapeMismatchError("hadamard: mixed real/complex layout mismatch");
    std::vector<cd> out(b.values());
    for (int k = 0; k < b.size(); ++k) out[k] *= a[k];
    return Field(b.grid(), b.shape(), std::move(out));
}

RealField operator+(const RealField& a, const RealField& b) {
    a.require_same_layout(b, "operator+");
    std::vector<double> out(a.values());
    for (int k = 0; k < b.size(); ++k) out[k] += b[k];
    return RealField(a.grid(), a.shape(), std::move(out));
}

RealField operator-(const RealField& a, const RealField& b) {
    a.require_same_layout(b, "operator-");
    std::vector<double> out(a.values());
    for (int k = 0; k < b.size(); ++k) out[k] -= b[k];
    return RealField(a.grid(), a.shape(), std::move(out));
}

RealField operator*(const RealField& a, double s) {
    std::vector<double> out(a.values());
    for (auto& x : out) x *= s;
    return RealField(a.grid(), a.shape(), std::move(out));
}

RealField real_part(const Field& a) {
    std::vector<double> out(a.size());
    for (int k = 0; k < a.size(); ++k) out[k] = a[k].real();
    return RealField(a.grid(), a.shape(), std::move(out));
}

double max_imag_abs(const Field& a) {
    double m = 0.0;
    for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k].imag()));
    return m;
}

}  // namespace phasewig::numgrid
