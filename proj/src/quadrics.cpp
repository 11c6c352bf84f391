#include "aq/quadrics.hpp"

#include <sstream>

namespace aq::quadrics {

AffineQuadricPoly::AffineQuadricPoly(QMatrix q, std::vector<Rational> b, Rational c)
    : n(q.rows), quad(std::move(q)), lin(std::move(b)), cst(std::move(c))
{
    if (quad.rows != quad.cols) throw std::domain_error("AffineQuadricPoly: matrix not square");
    if (lin.size() != n) throw std::domain_error("AffineQuadricPoly: linear part length mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (quad(i, j) != quad(j, i))
                throw std::domain_error("AffineQuadricPoly: quadratic part not symmetric");
}

Rational AffineQuadricPoly::operator()(const std::vector<Rational>& x) const
{
    if (x.size() != n) throw std::invalid_argument("AffineQuadricPoly: wrong point length");
    Rational s = cst;
    for (std::size_t i = 0; i < n; ++i) {
        s += lin[i] * x[i];
        for (std::size_t j = 0; j < n; ++j) s += quad(i, j) * x[i] * x[j];
    }
    return s;
}

std::string AffineQuadricPoly::str() const
{
    std::ostringstream out;
    bool first = true;
    auto emit = [&](const Rational& coeff, const std::string& mono) {
        if (coeff == 0) return;
        Rational c = coeff;
        if (first) {
            if (c < 0) {
                out << "-";
                c = -c;
            }
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        if (mono.empty()) {
            out << to_string(c);
        } else {
            if (c != 1) out << to_string(c) << "*";
            out << mono;
        }
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Rational c = (i == j) ? quad(i, i) : quad(i, j) * 2;
            std::string mono = "x" + std::to_string(i + 1);
            mono += (i == j) ? "^2" : "*x" + std::to_string(j + 1);
            emit(c, mono);
        }
    for (std::size_t i = 0; i < n; ++i) emit(lin[i], "x" + std::to_string(i + 1));
    emit(cst, "");
    if (first) out << "0";
    return out.str();
}

std::vector<Rational> AffineChange::apply(const std::vector<Rational>& y) const
{
    std::vector<Rational> x = a * y;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += shift[i];
    return x;
}

std::vector<Rational> AffineChange::apply_inverse(const std::vector<Rational>& x) const
{
    std::vector<Rational> t = x;
    for (std::size_t i = 0; i < t.size(); ++i) t[i] -= shift[i];
    return a_inv * t;
}

NormalForm normalize(const AffineQuadricPoly& poly)
{
    const std::size_t n = poly.n;
    bool quad_nonzero = false;
    for (const auto& v : poly.quad.a) quad_nonzero = quad_nonzero || v != 0;
    if (!quad_nonzero) throw std::domain_error("normalize: degree < 2 (quadratic part vanishes)");

    NormalForm nf;
    nf.ambient_n = n;

    auto diag = forms::diagonalize(poly.quad);
    const std::size_t m = diag.form.dim();
    const QMatrix& t = diag.transform;

    // linear part in the diagonalizing coordinates
    std::vector<Rational> b = t.transposed() * poly.lin;

    // complete the square on the first m coordinates
    std::vector<Rational> shift(n, Rational(0));
    Rational c = poly.cst;
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] == 0) continue;
        shift[i] = -b[i] / (2 * diag.form[i]);
        c -= b[i] * b[i] / (4 * diag.form[i]);
    }

    bool residual_linear = false;
    for (std::size_t i = m; i < n; ++i) residual_linear = residual_linear || b[i] != 0;

    if (residual_linear) {
        nf.shape = NormalForm::Shape::FullAffineSpace;
        nf.affine_dim = n - 1;
        return nf;
    }
    if (c == 0) {
        nf.shape = NormalForm::Shape::NonSmooth;
        nf.cone_form = diag.form;
        nf.report = "singular quadric: affine cone over " + diag.form.str() +
                    " (naive A^1-connected components are trivial)";
        return nf;
    }
    nf.shape = NormalForm::Shape::Product;
    nf.psi = diag.form.scaled(-1 / c);
    nf.affine_factor = n - m;
    nf.scalar = c == 0 ? Rational(1) : -c;
    nf.change.a = t;
    nf.change.shift = t * shift;
    nf.change.a_inv = t.inverse();
    if (!verify_normal_form(poly, nf)) throw std::logic_error("normalize: verification failed (bug)");
    return nf;
}

AffineQuadricPoly push_canonical(const NormalForm& nf)
{
    if (nf.shape != NormalForm::Shape::Product)
        throw std::domain_error("push_canonical: Product normal forms only");
    const std::size_t n = nf.ambient_n;
    // canonical polynomial scalar*(psi(y)-1) in coordinates y = change^{-1}(x)
    // becomes x^T (A^{-T} S A^{-1}) x + ... ; build it directly instead by the
    // forward substitution identity on the change map.
    QMatrix s(n, n);
    for (std::size_t i = 0; i < nf.psi.dim(); ++i) s(i, i) = nf.scalar * nf.psi[i];
    const QMatrix& ainv = nf.change.a_inv;
    QMatrix q = ainv.transposed() * s * ainv;
    std::vector<Rational> shifted = nf.change.shift;
    // linear and constant from expanding scalar*(psi(Ainv(x - shift)) - 1)
    std::vector<Rational> lin(n, Rational(0));
    Rational cst = -nf.scalar;
    // p(x) = (x - shift)^T Q' (x - shift) + cst with Q' = q
    // expand: x^T q x - 2 shift^T q x + shift^T q shift + cst
    std::vector<Rational> qshift = q * shifted;
    for (std::size_t i = 0; i < n; ++i) lin[i] = -2 * qshift[i];
    Rational sq = 0;
    for (std::size_t i = 0; i < n; ++i) sq += shifted[i] * qshift[i];
    cst += sq;
    return AffineQuadricPoly(q, lin, cst);
}

bool verify_normal_form(const AffineQuadricPoly& poly, const NormalForm& nf)
{
    if (nf.shape != NormalForm::Shape::Product) return true;
    // input(change(y)) must equal scalar * (psi(y) - 1) identically:
    //   quadratic: A^T Q A = scalar * diag(psi, 0)
    //   linear:    (2 shift^T Q + b^T) A = 0
    //   constant:  shift^T Q shift + b^T shift + c = -scalar
    const std::size_t n = poly.n;
    const QMatrix& a = nf.change.a;
    QMatrix qa = a.transposed() * poly.quad * a;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational expect = 0;
            if (i == j && i < nf.psi.dim()) expect = nf.scalar * nf.psi[i];
            if (qa(i, j) != expect) return false;
        }
    std::vector<Rational> qs = poly.quad * nf.change.shift;
    for (std::size_t j = 0; j < n; ++j) {
        Rational lj = 0;
        for (std::size_t i = 0; i < n; ++i) lj += (2 * qs[i] + poly.lin[i]) * a(i, j);
        if (lj != 0) return false;
    }
    Rational cterm = poly.cst;
    for (std::size_t i = 0; i < n; ++i)
        cterm += nf.change.shift[i] * (qs[i] + poly.lin[i]);
    if (cterm != -nf.scalar) return false;
    // inverse really inverts
    QMatrix id = QMatrix::identity(n);
    return a * nf.change.a_inv == id;
}

ModelIso<Rational> to_Xphi_model(const QuadraticForm& psi)
{
    auto w = forms::witt_decompose(psi);
    if (w.witt_index == 0)
        throw std::domain_error("to_Xphi_model: psi is anisotropic over Q");
    const std::size_t n = psi.dim();
    // T^T G T = diag(1,-1,c_3..c_n); phi' = <c_3..c_n>, phi = <1> | (-phi')
    std::vector<Rational> phi{Rational(1)};
    for (std::size_t i = 2; i < n; ++i) phi.push_back(-w.target[i]);

    // y = T w, (w_1, w_2) = ((x_1 + x_2)/2, (x_2 - x_1)/2), w_i = x_i
    QMatrix nmat(n, n);
    nmat(0, 0) = Rational(1, 2);
    nmat(0, 1) = Rational(1, 2);
    nmat(1, 0) = Rational(-1, 2);
    nmat(1, 1) = Rational(1, 2);
    for (std::size_t i = 2; i < n; ++i) nmat(i, i) = 1;
    QMatrix to_src = w.transform * nmat;  // x (X^phi coords) -> y (Q^psi coords)

    ModelIso<Rational> iso;
    iso.src.kind = QuadricModel::Kind::Qpsi;
    iso.src.form = psi.coeffs();
    iso.dst.kind = QuadricModel::Kind::Xphi;
    iso.dst.form = phi;
    iso.to_src = to_src;
    iso.to_dst = to_src.inverse();
    iso.direction = "Q^psi -> X^phi (hyperbolic split)";
    if (!iso.verify()) throw std::logic_error("to_Xphi_model: pushforward check failed (bug)");
    return iso;
}

namespace {

/// Orthogonal completion of a vector of nonzero norm to a basis, over K.
template <class K>
Mat<K> gram_schmidt_complete(const std::vector<K>& diag_form, const std::vector<K>& first)
{
    const std::size_t n = diag_form.size();
    auto bil = [&](const std::vector<K>& x, const std::vector<K>& y) {
        K s(0);
        for (std::size_t i = 0; i < n; ++i) s += diag_form[i] * x[i] * y[i];
        return s;
    };
    std::vector<std::vector<K>> basis{first};
    while (basis.size() < n) {
        std::optional<std::vector<K>> pick;
        // orthogonalized standard vectors with nonzero norm, else pair sums
        std::vector<std::vector<K>> residuals;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<K> e(n, K(0));
            e[i] = K(1);
            for (const auto& bvec : basis) {
                K coeff = bil(e, bvec) / bil(bvec, bvec);
                for (std::size_t k = 0; k < n; ++k) e[k] -= coeff * bvec[k];
            }
            bool zero = true;
            for (const auto& x : e) zero = zero && x == K(0);
            if (zero) continue;
            if (!(bil(e, e) == K(0))) {
                pick = e;
                break;
            }
            residuals.push_back(e);
        }
        if (!pick) {
            for (std::size_t i = 0; i < residuals.size() && !pick; ++i)
                for (std::size_t j = i + 1; j < residuals.size() && !pick; ++j) {
                    std::vector<K> s(n);
                    for (std::size_t k = 0; k < n; ++k) s[k] = residuals[i][k] + residuals[j][k];
                    if (!(bil(s, s) == K(0))) pick = s;
                }
        }
        if (!pick) throw std::logic_error("gram_schmidt_complete: no anisotropic completion");
        basis.push_back(*pick);
    }
    Mat<K> v(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) v(r, c) = basis[c][r];
    return v;
}

}  // namespace

ModelIso<QuadElem> change_coords_JF(const QuadraticForm& psi, const QuadField& K,
                                    const std::vector<QuadElem>& witness)
{
    const std::size_t n = psi.dim();
    if (n < 2) throw std::domain_error("change_coords_JF: need dimension >= 2");
    if (psi[0] != 1)
        throw std::domain_error("change_coords_JF: psi must have leading entry 1 "
                                "(standardize first)");
    // phi with psi = <1> | (-phi)
    std::vector<QuadElem> phi(n - 1);
    for (std::size_t i = 1; i < n; ++i) phi[i - 1] = QuadElem(-psi[i]);
    if (witness.size() != n - 1)
        throw std::domain_error("change_coords_JF: witness length mismatch");
    QuadElem val(0);
    for (std::size_t i = 0; i < n - 1; ++i) val += phi[i] * witness[i] * witness[i];
    if (!(val == QuadElem(1)))
        throw std::domain_error("change_coords_JF: witness does not represent 1");

    Mat<QuadElem> v = gram_schmidt_complete(phi, witness);
    Mat<QuadElem> a = v.inverse();

    // theta entries: theta_i = phi(v_i, v_i); theta_1 = 1
    std::vector<QuadElem> theta(n - 1);
    for (std::size_t c = 0; c < n - 1; ++c) {
        QuadElem s(0);
        for (std::size_t r = 0; r < n - 1; ++r) s += phi[r] * v(r, c) * v(r, c);
        theta[c] = s;
    }
    if (!(theta[0] == QuadElem(1)))
        throw std::logic_error("change_coords_JF: theta leading entry not 1 (bug)");

    // z_1 = x_1 - u_1, z_2 = x_1 + u_1, z_i = u_{i-1}, with u = A x'
    Mat<QuadElem> l(n, n);
    l(0, 0) = QuadElem(1);
    l(1, 0) = QuadElem(1);
    for (std::size_t j = 0; j < n - 1; ++j) {
        l(0, j + 1) = -a(0, j);
        l(1, j + 1) = a(0, j);
    }
    for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = 0; j < n - 1; ++j) l(i, j + 1) = a(i - 1, j);

    ModelIso<QuadElem> iso;
    iso.src.kind = QuadricModelK::Kind::Qpsi;
    for (std::size_t i = 0; i < n; ++i) iso.src.form.push_back(QuadElem(psi[i]));
    iso.dst.kind = QuadricModelK::Kind::Xphi;
    iso.dst.form = theta;
    iso.to_dst = l;
    iso.to_src = l.inverse();
    iso.direction = "J^F: Q^psi_F -> X^{theta^F} over " + K.str();
    if (!iso.verify()) throw std::logic_error("change_coords_JF: pushforward check failed (bug)");
    return iso;
}

Standardization standardize_with_point(const QuadraticForm& psi,
                                       const std::vector<Rational>& point)
{
    if (psi(point) != 1) throw std::domain_error("standardize_with_point: psi(P) != 1");
    std::vector<Rational> diag = psi.coeffs();
    QMatrix u = gram_schmidt_complete<Rational>(diag, point);
    Standardization s;
    std::vector<Rational> entries;
    for (std::size_t c = 0; c < psi.dim(); ++c) {
        std::vector<Rational> col(psi.dim());
        for (std::size_t r = 0; r < psi.dim(); ++r) col[r] = u(r, c);
        entries.push_back(psi(col));
    }
    s.std_form = QuadraticForm(entries);
    s.u = u;
    s.u_inv = u.inverse();
    if (s.std_form[0] != 1) throw std::logic_error("standardize_with_point: head not 1 (bug)");
    return s;
}

}  // namespace aq::quadrics
