/// @file field.hpp
/// @brief Complex and real sample arrays bound to a PhaseGrid.
///
/// A Field is immutable in spirit: operations return new values. 2-D
/// storage is row-major with q as the slow index, i.e. idx = iq*np + ip.
#pragma once

#include <complex>
#include <vector>

#include "phasewig/errors.hpp"
#include "phasewig/grid.hpp"

namespace phasewig::numgrid {

using cd = std::complex<double>;

enum class Axis { Q, P };

enum class FieldShape { OverQ, OverP, OverQP };

int shape_size(const PhaseGrid& g, FieldShape s);

class Field {
public:
    Field(PhaseGrid grid, FieldShape shape);
    Field(PhaseGrid grid, FieldShape shape, std::vector<cd> values);

    const PhaseGrid& grid() const { return grid_; }
    FieldShape shape() const { return shape_; }
    int size() const { return static_cast<int>(v_.size()); }
    int nq() const { return grid_.q.n; }
    int np() const { return grid_.p.n; }

    bool has_axis(Axis a) const;

    cd& operator[](int k) { return v_[k]; }
    const cd& operator[](int k) const { return v_[k]; }
    cd& at(int iq, int ip) { return v_[static_cast<std::size_t>(iq) * np() + ip]; }
    const cd& at(int iq, int ip) const { return v_[static_cast<std::size_t>(iq) * np() + ip]; }

    std::vector<cd>& values() { return v_; }
    const std::vector<cd>& values() const { return v_; }

    double max_abs() const;
    bool all_finite() const;
    void require_same_layout(const Field& other, const char* who) const;

private:
    PhaseGrid grid_;
    FieldShape shape_;
    std::vector<cd> v_;
};

class RealField {
public:
    RealField(PhaseGrid grid, FieldShape shape);
    RealField(PhaseGrid grid, FieldShape shape, std::vector<double> values);

    const PhaseGrid& grid() const { return grid_; }
    FieldShape shape() const { return shape_; }
    int size() const { return static_cast<int>(v_.size()); }
    int nq() const { return grid_.q.n; }
    int np() const { return grid_.p.n; }

    double& operator[](int k) { return v_[k]; }
    const double& operator[](int k) const { return v_[k]; }
    double& at(int iq, int ip) { return v_[static_cast<std::size_t>(iq) * np() + ip]; }
    const double& at(int iq, int ip) const { return v_[static_cast<std::size_t>(iq) * np() + ip]; }

    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    double max_abs() const;
    bool all_finite() const;
    void require_same_layout(const RealField& other, const char* who) const;

    Field to_complex() const;

private:
    PhaseGrid grid_;
    FieldShape shape_;
    std::vector<double> v_;
};

// Elementwise helpers (layouts must match).
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, cd s);
Field operator*(cd s, const Field& a);
Field hadamard(const Field& a, const Field& b);
Field hadamard(const RealField& a, const Field& b);
RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(const RealField& a, double s);

RealField real_part(const Field& a);
double max_imag_abs(const Field& a);

}  // namespace phasewig::numgrid
