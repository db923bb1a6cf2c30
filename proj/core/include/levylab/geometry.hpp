#pragma once

#include <cmath>

namespace levylab {

/// Point in R^d for d <= 3; unused coordinates stay zero.
struct Vec {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec& operator+=(const Vec& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(double c, Vec a) {
        a.x *= c;
        a.y *= c;
        a.z *= c;
        return a;
    }
    friend bool operator==(const Vec&, const Vec&) = default;
};

inline double dot(const Vec& a, const Vec& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm_sq(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

inline double distance(const Vec& a, const Vec& b) { return norm(a - b); }

} // namespace levylab
