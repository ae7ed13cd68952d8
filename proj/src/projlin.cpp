#include "cycov/projlin.hpp"

#include <algorithm>

#include "cycov/errors.hpp"

namespace cycov {

// ---------------------------------------------------------------------------
// ProjectivePoint
// ---------------------------------------------------------------------------

ProjectivePoint::ProjectivePoint(std::vector<FieldElement> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DimensionMismatch("point needs coordinates");
    int pivot = -1;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!coords_[i].is_zero()) {
            pivot = (int)i;
            break;
        }
    }
    if (pivot < 0) throw Error("all coordinates zero");
    if (!coords_[pivot].is_one()) {
        FieldElement inv = coords_[pivot].inverse();
        for (auto& c : coords_) c = c * inv;
    }
}

bool ProjectivePoint::operator==(const ProjectivePoint& o) const {
    if (coords_.size() != o.coords_.size()) return false;
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] != o.coords_[i]) return false;
    return true;
}

bool ProjectivePoint::operator<(const ProjectivePoint& o) const {
    if (coords_.size() != o.coords_.size())
        throw DimensionMismatch("comparing points of different spaces");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] != o.coords_[i]) return coords_[i] < o.coords_[i];
    }
    return false;
}

ProjectivePoint ProjectivePoint::standard(FieldRef field, int size, int i) {
    if (i < 0 || i >= size) throw IndexOutOfRange("standard point index out of range");
    std::vector<FieldElement> c(size, field->zero());
    c[i] = field->one();
    return ProjectivePoint(std::move(c));
}

std::optional<int> ProjectivePoint::coordinate_axis() const {
    int axis = -1;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) continue;
        if (axis >= 0) return std::nullopt;
        axis = (int)i;
    }
    return axis;
}

std::string ProjectivePoint::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ':';
        s += coords_[i].to_string();
    }
    s += ']';
    return s;
}

// ---------------------------------------------------------------------------
// ProjectiveTransform
// ---------------------------------------------------------------------------

ProjectiveTransform::ProjectiveTransform(Matrix m) : m_(std::move(m)) {
    if (m_.det().is_zero()) throw SingularMatrix("transform matrix is singular");
    // canonical representative: first nonzero entry (row-major) scaled to 1
    for (int i = 0; i < m_.size(); ++i) {
        for (int j = 0; j < m_.size(); ++j) {
            if (!m_.at(i, j).is_zero()) {
                if (!m_.at(i, j).is_one()) m_ = m_.scaled(m_.at(i, j).inverse());
                return;
            }
        }
    }
}

ProjectivePoint ProjectiveTransform::apply(const ProjectivePoint& p) const {
    return ProjectivePoint(m_.apply(p.coords()));
}

ProjectiveTransform ProjectiveTransform::compose(const ProjectiveTransform& o) const {
    return ProjectiveTransform(m_ * o.m_);
}

ProjectiveTransform ProjectiveTransform::inverse() const {
    auto inv = m_.inverse();
    return ProjectiveTransform(std::move(*inv));  // invertible by invariant
}

bool ProjectiveTransform::is_identity() const {
    return m_ == Matrix::identity(field(), size());
}

ProjectiveTransform transposition(FieldRef field, int m, int i, int j) {
    if (i < 0 || i >= m || j < 0 || j >= m) throw IndexOutOfRange("transposition index");
    Matrix t = Matrix::identity(field, m);
    if (i != j) {
        t.at(i, i) = field->zero();
        t.at(j, j) = field->zero();
        t.at(i, j) = field->one();
        t.at(j, i) = field->one();
    }
    return ProjectiveTransform(std::move(t));
}

// ---------------------------------------------------------------------------
// Basis completion
// ---------------------------------------------------------------------------

namespace {

// rank via elimination on a copy; rows are vectors
int rank_of(std::vector<std::vector<FieldElement>> rows, FieldRef field) {
    int rank = 0;
    int ncols = rows.empty() ? 0 : (int)rows[0].size();
    int col = 0;
    for (; col < ncols && rank < (int)rows.size(); ++col) {
        int pivot = -1;
        for (int r = rank; r < (int)rows.size(); ++r) {
            if (!rows[r][col].is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[pivot], rows[rank]);
        FieldElement inv = rows[rank][col].inverse();
        for (int c = col; c < ncols; ++c) rows[rank][c] = rows[rank][c] * inv;
        for (int r = 0; r < (int)rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            FieldElement f = rows[r][col];
            for (int c = col; c < ncols; ++c) rows[r][c] = rows[r][c] - f * rows[rank][c];
        }
        ++rank;
    }
    (void)field;
    return rank;
}

}  // namespace

ProjectiveTransform basis_completion(const std::vector<ProjectivePoint>& points, int m) {
    if (points.empty()) throw DependentPoints("no points given");
    if ((int)points.size() > m) throw DependentPoints("more points than dimensions");
    FieldRef field = points[0].field();
    for (const auto& p : points) {
        if (p.ambient_size() != m) throw DimensionMismatch("point size != m");
    }

    // columns m-1-i carry the points; remaining columns filled greedily with
    // standard vectors, keeping the whole set independent
    std::vector<std::vector<FieldElement>> cols(m);
    std::vector<bool> used(m, false);
    for (std::size_t i = 0; i < points.size(); ++i) {
        int c = m - 1 - (int)i;
        cols[c] = points[i].coords();
        used[c] = true;
    }
    {
        std::vector<std::vector<FieldElement>> chosen;
        for (std::size_t i = 0; i < points.size(); ++i) chosen.push_back(points[i].coords());
        if (rank_of(chosen, field) != (int)points.size())
            throw DependentPoints("points are linearly dependent");
    }
    std::vector<std::vector<FieldElement>> chosen;
    for (std::size_t i = 0; i < points.size(); ++i) chosen.push_back(points[i].coords());
    int next_std = 0;
    for (int c = 0; c < m; ++c) {
        if (used[c]) continue;
        for (; next_std < m; ++next_std) {
            std::vector<FieldElement> cand(m, field->zero());
            cand[next_std] = field->one();
            auto trial = chosen;
            trial.push_back(cand);
            if (rank_of(trial, field) == (int)trial.size()) {
                chosen.push_back(cand);
                cols[c] = std::move(cand);
                used[c] = true;
                ++next_std;
                break;
            }
        }
        if (!used[c]) throw DependentPoints("could not complete basis");
    }

    Matrix b(field, m);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < m; ++r) b.at(r, c) = cols[c][r];
    auto inv = b.inverse();
    if (!inv) throw DependentPoints("completed basis is singular");
    return ProjectiveTransform(std::move(*inv));
}

// ---------------------------------------------------------------------------
// GL enumeration
// ---------------------------------------------------------------------------

mpz_class gl_order(FieldRef field, int m) {
    if (!field->finite()) throw InfiniteField("GL enumeration needs a finite field");
    mpz_class q = field->order();
    mpz_class qm;
    mpz_pow_ui(qm.get_mpz_t(), q.get_mpz_t(), m);
    mpz_class total = 1;
    mpz_class qi = 1;
    for (int i = 0; i < m; ++i) {
        total *= (qm - qi);
        qi *= q;
    }
    return total;
}

InvertibleEnumerator::InvertibleEnumerator(FieldRef field, int m, std::uint64_t cap)
    : field_(field), m_(m) {
    if (!field->finite()) throw InfiniteField("GL enumeration needs a finite field");
    order_ = gl_order(field, m);
    if (order_ > mpz_class((unsigned long)cap))
        throw CapExceeded("|GL_" + std::to_string(m) + "(" + field->spec_text() +
                          ")| = " + order_.get_str() + " exceeds cap " + std::to_string(cap));
    q_ = field->order().get_ui();
    row_digits_.assign(m, std::vector<std::uint64_t>(m, 0));
    elim_.assign(m + 1, Matrix(field, m));
}

// elim_[level] holds the reduced rows 0..level-1; returns whether candidate
// row at `level` is independent, updating elim_[level+1]
bool InvertibleEnumerator::descend(int level) {
    Matrix next = elim_[level];
    std::vector<FieldElement> row(m_, field_->zero());
    for (int j = 0; j < m_; ++j) row[j] = field_->element_at(row_digits_[level][j]);
    // reduce against prior pivots (stored in rows 0..level-1 of elim_)
    for (int r = 0; r < level; ++r) {
        int pc = -1;
        for (int j = 0; j < m_; ++j) {
            if (!next.at(r, j).is_zero()) {
                pc = j;
                break;
            }
        }
        if (pc < 0) continue;
        if (!row[pc].is_zero()) {
            FieldElement f = row[pc] * next.at(r, pc).inverse();
            for (int j = 0; j < m_; ++j) row[j] = row[j] - f * next.at(r, j);
        }
    }
    bool nonzero = false;
    for (int j = 0; j < m_; ++j) {
        if (!row[j].is_zero()) {
            nonzero = true;
            break;
        }
    }
    if (!nonzero) return false;
    for (int j = 0; j < m_; ++j) next.at(level, j) = row[j];
    elim_[level + 1] = std::move(next);
    return true;
}

bool InvertibleEnumerator::advance_row(int level) {
    auto& digits = row_digits_[level];
    for (int j = m_ - 1; j >= 0; --j) {
        if (++digits[j] < q_) return true;
        digits[j] = 0;
    }
    return false;
}

std::optional<Matrix> InvertibleEnumerator::next() {
    if (done_) return std::nullopt;
    int level;
    if (!started_) {
        started_ = true;
        level = 0;
        for (auto& d : row_digits_) std::fill(d.begin(), d.end(), 0);
    } else {
        // backtrack from a fully emitted matrix
        level = m_ - 1;
        while (level >= 0 && !advance_row(level)) --level;
        if (level < 0) {
            done_ = true;
            return std::nullopt;
        }
    }
    // depth-first with prefix-rank pruning; row-major lex order is preserved
    // because candidate rows ascend and pruning only skips non-matrices
    while (level < m_) {
        if (descend(level)) {
            ++level;
            if (level < m_) std::fill(row_digits_[level].begin(), row_digits_[level].end(), 0);
            continue;
        }
        while (level >= 0 && !advance_row(level)) --level;
        if (level < 0) {
            done_ = true;
            return std::nullopt;
        }
    }
    Matrix out(field_, m_);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) out.at(i, j) = field_->element_at(row_digits_[i][j]);
    return out;
}

// ---------------------------------------------------------------------------
// Random matrices
// ---------------------------------------------------------------------------

FieldElement random_element(FieldRef field, SplitMix64& rng) {
    if (!field->finite()) throw InfiniteField("random elements need a finite field");
    return field->element_at(rng.below(field->order().get_ui()));
}

Matrix random_invertible_matrix(FieldRef field, int m, SplitMix64& rng) {
    for (;;) {
        Matrix cand(field, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) cand.at(i, j) = random_element(field, rng);
        if (!cand.det().is_zero()) return cand;
    }
}

ProjectiveTransform random_invertible(FieldRef field, int m, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return ProjectiveTransform(random_invertible_matrix(field, m, rng));
}

// ---------------------------------------------------------------------------
// Projective point enumeration
// ---------------------------------------------------------------------------

mpz_class projective_point_count(FieldRef field, int m) {
    if (!field->finite()) throw InfiniteField("point enumeration needs a finite field");
    mpz_class q = field->order();
    mpz_class total = 0, qi = 1;
    for (int i = 0; i <= m; ++i) {
        total += qi;
        qi *= q;
    }
    return total;
}

void for_each_projective_point(FieldRef field, int m, std::uint64_t cap,
                               const std::function<bool(const ProjectivePoint&)>& fn) {
    mpz_class total = projective_point_count(field, m);
    if (total > mpz_class((unsigned long)cap))
        throw EnumerationCapExceeded("|P^" + std::to_string(m) + "(" + field->spec_text() +
                                     ")| = " + total.get_str() + " exceeds cap " +
                                     std::to_string(cap));
    std::uint64_t q = field->order().get_ui();
    std::vector<FieldElement> coords((std::size_t)m + 1, field->zero());
    // ascending lex on coordinate vectors: pivot positions from last to first
    for (int pivot = m; pivot >= 0; --pivot) {
        for (int i = 0; i < pivot; ++i) coords[i] = field->zero();
        coords[pivot] = field->one();
        int free_count = m - pivot;
        std::vector<std::uint64_t> digits(free_count, 0);
        for (;;) {
            for (int t = 0; t < free_count; ++t)
                coords[pivot + 1 + t] = field->element_at(digits[t]);
            if (!fn(ProjectivePoint(coords))) return;
            int j = free_count - 1;
            while (j >= 0) {
                if (++digits[j] < q) break;
                digits[j] = 0;
                --j;
            }
            if (j < 0) break;
        }
    }
}

}  // namespace cycov
