#ifndef CYCOV_PROJLIN_HPP
#define CYCOV_PROJLIN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cycov/field.hpp"
#include "cycov/matrix.hpp"

namespace cycov {

/// Point of projective space with canonical representative: first nonzero
/// coordinate scaled to 1.
class ProjectivePoint {
public:
    explicit ProjectivePoint(std::vector<FieldElement> coords);  // canonicalizes

    const std::vector<FieldElement>& coords() const { return coords_; }
    int ambient_size() const { return (int)coords_.size(); }  // m+1 coordinates
    FieldRef field() const { return coords_[0].field(); }

    bool operator==(const ProjectivePoint& o) const;
    bool operator!=(const ProjectivePoint& o) const { return !(*this == o); }
    /// Lexicographic on canonical coordinates in the canonical element order.
    bool operator<(const ProjectivePoint& o) const;

    /// Standard point e_i = [0:...:1:...:0].
    static ProjectivePoint standard(FieldRef field, int size, int i);
    /// Index of the only nonzero coordinate, or nullopt.
    std::optional<int> coordinate_axis() const;

    std::string to_string() const;  // "[0:0:1]"

private:
    std::vector<FieldElement> coords_;
};

/// Invertible matrix modulo scalars.  Canonical representative: first
/// nonzero entry in row-major order equals 1.
class ProjectiveTransform {
public:
    explicit ProjectiveTransform(Matrix m);  // throws SingularMatrix

    const Matrix& matrix() const { return m_; }
    int size() const { return m_.size(); }
    FieldRef field() const { return m_.field(); }

    ProjectivePoint apply(const ProjectivePoint& p) const;
    ProjectiveTransform compose(const ProjectiveTransform& o) const;  // matrix product
    ProjectiveTransform inverse() const;
    bool operator==(const ProjectiveTransform& o) const { return m_ == o.m_; }
    bool is_identity() const;

private:
    Matrix m_;
};

/// Coordinate swap i <-> j on projective m-space matrices.
ProjectiveTransform transposition(FieldRef field, int m, int i, int j);

/// Given r+1 <= m independent points, the transform sending points[i] to the
/// standard point e_{m-1-i} (last coordinate first).  Remaining basis vectors
/// are the first standard vectors completing independence, greedily in index
/// order.  Throws DependentPoints.
ProjectiveTransform basis_completion(const std::vector<ProjectivePoint>& points, int m);

/// Streams every invertible m x m matrix over a finite field exactly once in
/// row-major lexicographic order of entries.  Construction fails with
/// CapExceeded when |GL_m(F_q)| > cap, reporting the exact group order.
class InvertibleEnumerator {
public:
    InvertibleEnumerator(FieldRef field, int m, std::uint64_t cap);

    /// Next matrix, or nullopt when the stream is exhausted.
    std::optional<Matrix> next();

    const mpz_class& group_order() const { return order_; }

private:
    bool advance_row(int level);
    bool descend(int level);

    FieldRef field_;
    int m_;
    std::uint64_t q_;
    mpz_class order_;
    std::vector<std::vector<std::uint64_t>> row_digits_;  // per level, entry indices
    std::vector<Matrix> elim_;                            // elimination state per level
    bool done_ = false;
    bool started_ = false;
};

mpz_class gl_order(FieldRef field, int m);

/// SplitMix64: the fixed, documented PRNG behind every randomized routine.
/// Identical seeds give identical streams on every platform.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, bound) by rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t lim = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= lim);
        return x % bound;
    }
};

FieldElement random_element(FieldRef field, SplitMix64& rng);

/// Deterministic invertible matrix from a 64-bit seed: entries drawn from
/// SplitMix64, whole matrix rejected until the determinant is nonzero.
ProjectiveTransform random_invertible(FieldRef field, int m, std::uint64_t seed);
Matrix random_invertible_matrix(FieldRef field, int m, SplitMix64& rng);

/// Number of points of P^m(F_q).
mpz_class projective_point_count(FieldRef field, int m);

/// Visits every point of P^m(F_q) in canonical order (ascending lex on
/// canonical coordinate vectors).  The callback returns false to stop early.
/// Throws EnumerationCapExceeded when the total exceeds cap.
void for_each_projective_point(FieldRef field, int m, std::uint64_t cap,
                               const std::function<bool(const ProjectivePoint&)>& fn);

}  // namespace cycov

#endif
