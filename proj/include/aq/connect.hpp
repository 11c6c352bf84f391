#ifndef AQ_CONNECT_HPP
#define AQ_CONNECT_HPP

#include "aq/forms.hpp"
#include "aq/homotopy.hpp"
#include "aq/qvt.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aq::connect {

using forms::QuadraticForm;

struct ConnectOptions {
    bool quadratically_closed = false;
    long budget = 200;
};

/// Witt index i0, and the first Witt index i1 (exact or an interval) when the
/// form is anisotropic.
struct WittIndexReport {
    std::size_t i0 = 0;
    enum class I1 { None, Exact, Interval } i1_kind = I1::None;
    std::size_t i1_lo = 0, i1_hi = 0;
    std::string provenance;  // which rule fired
};

WittIndexReport witt_report(const QuadraticForm& psi, const ConnectOptions& opts = {});

/// Field selector for section computations: Q, R, or Q_p.
struct FieldSel {
    enum class Kind { Q, R, Qp } kind = Kind::Q;
    Int p = 0;

    static FieldSel rational() { return {Kind::Q, 0}; }
    static FieldSel real() { return {Kind::R, 0}; }
    static FieldSel p_adic(Int prime) { return {Kind::Qp, std::move(prime)}; }
    std::string str() const
    {
        switch (kind) {
            case Kind::Q: return "Q";
            case Kind::R: return "R";
            default: return "Q_" + p.str();
        }
    }
};

/// pi_0(Q^psi)(F) = F*/<D(phi_F)> data in the isotropic case.
struct Pi0Description {
    FieldSel field;
    enum class Triviality { Trivial, NonTrivial, Unknown } triviality = Triviality::Unknown;

    struct LocalDatum {
        arith::Place place{arith::Place::real()};
        forms::LocalValueGroup group;
    };
    std::vector<LocalDatum> local_data;

    // membership oracle handle (F = Q): callers query
    // forms::value_group_membership(*phi, d)
    std::optional<QuadraticForm> phi;

    enum class RankKind { Finite, InfiniteOrUnknown } rank_kind = RankKind::InfiniteOrUnknown;
    std::size_t rank = 0;
    std::vector<Rational> generators;  // independent nontrivial classes
    std::string note;
};

Pi0Description pi0_isotropic(const QuadraticForm& psi, const FieldSel& field,
                             const ConnectOptions& opts = {});

/// A^1-connectivity verdict per the Witt-index criterion.
struct ConnectivityVerdict {
    enum class Verdict { Connected, NotConnected, Unknown } verdict = Verdict::Unknown;
    std::string fired_condition;
    std::size_t i0_kappa = 0, i0_psi = 0;
    std::optional<WittIndexReport> i1_psi;
    std::optional<QuadraticForm> phi;           // psi ~ <1> | (-phi) when defined
    std::optional<qvt::QvtVerdict> qvt_witness;  // materialized obstruction
    std::string evidence;
};

ConnectivityVerdict a1_connected(const QuadraticForm& psi, const ConnectOptions& opts = {});

/// Theorem on n <= 2 variables: pi_0 = S = Q^psi(K); with the quadratically
/// closed flag, the 2-variable case is the G_m-type classification.
struct LowDimReport {
    std::size_t n = 0;
    std::string classification;
    bool gm_type = false;
    std::string details;
};

LowDimReport low_dimension_report(const QuadraticForm& psi, const ConnectOptions& opts = {});

/// Budgeted S^2 search: connect two rational points on an anisotropic quadric
/// through chains of good rational curves.
struct S2Verdict {
    enum class Outcome { SameClass, Unknown } outcome = Outcome::Unknown;
    struct Hop {
        qvt::RationalCurveOnQuadric curve;
        Rational t_from, t_to;
        qvt::QvtVerdict goodness;
    };
    std::vector<Hop> hops;  // empty for P = Q
    std::string note;
};

S2Verdict s2_connect_points(const QuadraticForm& psi, const std::vector<Rational>& p,
                            const std::vector<Rational>& q, const ConnectOptions& opts = {});

}  // namespace aq::connect

#endif
