#ifndef AQ_QUADRICS_HPP
#define AQ_QUADRICS_HPP

#include "aq/forms.hpp"
#include "aq/matrix.hpp"
#include "aq/numfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aq::quadrics {

using forms::QMatrix;
using forms::QuadraticForm;
using nf::QuadElem;
using nf::QuadField;

/// A quadratic polynomial sum a_ij x_i x_j + sum b_i x_i + c with symmetric
/// quadratic part.
struct AffineQuadricPoly {
    std::size_t n = 0;
    QMatrix quad;               // n x n symmetric
    std::vector<Rational> lin;  // length n
    Rational cst = 0;

    AffineQuadricPoly() = default;
    AffineQuadricPoly(QMatrix q, std::vector<Rational> b, Rational c);

    Rational operator()(const std::vector<Rational>& x) const;
    bool operator==(const AffineQuadricPoly& o) const
    {
        return n == o.n && quad == o.quad && lin == o.lin && cst == o.cst;
    }
    std::string str() const;  // round-trips through the CLI parser
};

/// Invertible affine map y -> A y + shift with its inverse.
struct AffineChange {
    QMatrix a;
    std::vector<Rational> shift;
    QMatrix a_inv;

    std::vector<Rational> apply(const std::vector<Rational>& y) const;
    std::vector<Rational> apply_inverse(const std::vector<Rational>& x) const;
};

/// Result of normalization: affine space, Q^psi x A^k, or a singular cone.
struct NormalForm {
    enum class Shape { FullAffineSpace, Product, NonSmooth };
    Shape shape = Shape::Product;
    std::size_t ambient_n = 0;

    // FullAffineSpace
    std::size_t affine_dim = 0;  // the hypersurface is A^{ambient_n - 1}

    // Product
    QuadraticForm psi;
    std::size_t affine_factor = 0;
    AffineChange change;  // canonical coords -> input coords
    Rational scalar = 1;  // input(change(y)) = scalar * (psi(y) - 1)

    // NonSmooth
    QuadraticForm cone_form;
    std::string report;
};

/// Normalization algorithm: diagonalize, absorb linear terms by completing
/// the square, then split on residual linear terms / constant.
NormalForm normalize(const AffineQuadricPoly& poly);

/// Exact re-verification of a Product normal form against the input.
bool verify_normal_form(const AffineQuadricPoly& poly, const NormalForm& nf);

/// Rebuild the polynomial representing a Product normal form's canonical
/// equation pushed through the change (test helper; exact).
AffineQuadricPoly push_canonical(const NormalForm& nf);

/// Affine quadric model over a field K: Q^psi (psi(x) = 1) or X^phi
/// (x1 x2 = phi(1, x3..xn)).
template <class K>
struct ModelT {
    enum class Kind { Qpsi, Xphi };
    Kind kind = Kind::Qpsi;
    std::vector<K> form;  // diagonal entries of psi resp. phi

    std::size_t ambient() const
    {
        return kind == Kind::Qpsi ? form.size() : form.size() + 1;
    }

    /// Defining equation evaluated at a point (zero iff on the quadric).
    K equation(const std::vector<K>& x) const
    {
        if (x.size() != ambient()) throw std::invalid_argument("ModelT: wrong point length");
        if (kind == Kind::Qpsi) {
            K s(0);
            for (std::size_t i = 0; i < form.size(); ++i) s += form[i] * x[i] * x[i];
            return s - K(1);
        }
        K s = form[0];
        for (std::size_t i = 1; i < form.size(); ++i) s += form[i] * x[i + 1] * x[i + 1];
        return x[0] * x[1] - s;
    }

    /// Gram matrix of the quadratic part of the defining polynomial; the
    /// constant term is -form[0] for Xphi and -1 for Qpsi.
    Mat<K> gram() const
    {
        std::size_t m = ambient();
        Mat<K> g(m, m);
        if (kind == Kind::Qpsi) {
            for (std::size_t i = 0; i < m; ++i) g(i, i) = form[i];
        } else {
            g(0, 1) = g(1, 0) = K(1) / K(2);
            for (std::size_t i = 1; i < form.size(); ++i) g(i + 1, i + 1) = -form[i];
        }
        return g;
    }

    K constant_term() const { return kind == Kind::Qpsi ? K(-1) : -form[0]; }
};

using QuadricModel = ModelT<Rational>;
using QuadricModelK = ModelT<QuadElem>;

template <class K>
bool on_quadric(const ModelT<K>& model, const std::vector<K>& point)
{
    return model.equation(point) == K(0);
}

/// Linear isomorphism between two quadric models over K (no shift; the
/// defining equations match exactly under x_src = to_src * x_dst).
template <class K>
struct ModelIso {
    ModelT<K> src, dst;
    Mat<K> to_dst;  // x_dst = to_dst * x_src
    Mat<K> to_src;  // inverse
    std::string direction;

    std::vector<K> push(const std::vector<K>& x_src) const { return to_dst * x_src; }
    std::vector<K> pull(const std::vector<K>& x_dst) const { return to_src * x_dst; }

    /// Exact pushforward identity: to_src^T G_src to_src = G_dst etc.
    bool verify() const
    {
        Mat<K> lhs = to_src.transposed() * src.gram() * to_src;
        if (!(lhs == dst.gram())) return false;
        if (!(src.constant_term() == dst.constant_term())) return false;
        Mat<K> id = Mat<K>::identity(to_src.rows);
        return to_dst * to_src == id && to_src * to_dst == id;
    }
};

/// Split one hyperbolic plane off an isotropic psi: Q^psi ~ X^phi with
/// psi ~ <1,-1> | phi' and phi = <1> | (-phi').
ModelIso<Rational> to_Xphi_model(const QuadraticForm& psi);

/// Construction of the explicit isomorphism J^F: Q^psi_F -> X^{theta^F} for
/// psi = <1> | (-phi) anisotropic over Q but isotropic over F = Q(sqrt(m)).
/// The witness is an F-vector with phi(witness) = 1.
ModelIso<QuadElem> change_coords_JF(const QuadraticForm& psi, const QuadField& K,
                                    const std::vector<QuadElem>& witness);

/// Isometry psi ~ <1, c_2, ..., c_n> moving a rational point P of Q^psi to
/// the first basis vector (Gram-Schmidt from P). Returns the standardized
/// form and the matrix U with psi(U x) = psi_std(x), U e_1 = P.
struct Standardization {
    QuadraticForm std_form;  // first entry 1
    QMatrix u;               // columns: P, then the completed basis
    QMatrix u_inv;
};

Standardization standardize_with_point(const QuadraticForm& psi,
                                       const std::vector<Rational>& point);

}  // namespace aq::quadrics

#endif
