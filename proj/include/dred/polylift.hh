/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef DRED_POLYLIFT_HH
#define DRED_POLYLIFT_HH 1

#include <dred/dbuild.hh>
#include <dred/operations.hh>
#include <dred/solver.hh>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dred
{
    // Elements of the zigzag, ordered 00 < 01 < 10 < 11. The indices double
    // as offsets within a zigzag segment of a path.
    inline constexpr int z00 = 0, z01 = 1, z10 = 2, z11 = 3;

    auto zigzag_structure() -> RelStructure;

    auto zz_meet() -> OpTable;
    auto zz_join() -> OpTable;
    auto zz_median() -> OpTable;
    auto zz_allmin(int m) -> OpTable;
    auto zz_p1() -> OpTable;
    auto zz_p2() -> OpTable;

    /// Does f keep {00,10} and {01,11} closed?
    auto zz_preserves_sides(const OpTable & f) -> bool;

    enum class Order
    {
        Plain,      // ties between paths broken by (a, r)
        Star        // ties between paths broken by (r, a)
    };

    /// Sort key realising the order; smaller key means earlier.
    auto order_key(const DMeta & meta, int v, Order order) -> std::array<int, 4>;
    auto order_less(const DMeta & meta, int x, int y, Order order = Order::Plain) -> bool;
    auto order_min(const DMeta & meta, const std::vector<int> & vs, Order order = Order::Plain) -> int;
    auto order_max(const DMeta & meta, const std::vector<int> & vs, Order order = Order::Plain) -> int;

    auto level_of(const DMeta & meta, int v) -> int;

    /// Is the tuple in the component of D(A)^m holding the diagonal?
    auto in_delta(const DMeta & meta, const std::vector<int> & c) -> bool;

    /// The same, by search in the product: for every pair (x, y), whether it
    /// reaches the diagonal in D(A)^2. Indexed x * |D| + y.
    auto delta_pairs_by_search(const DMeta & meta) -> std::vector<bool>;

    enum class LiftCase
    {
        ElementTuple,       // 1a
        TupleTuple,         // 1b
        ForcedEdge,         // 2a
        AllZigzag,          // 2b
        SomeZigzag,         // 2c
        TwoPaths,           // 3a
        OnePath,            // same level, outside the diagonal component, one path
        TwoLevels,          // 3b
        Minimum             // 3c
    };

    auto case_name(LiftCase c) -> std::string;

    struct CaseData
    {
        LiftCase tag;
        std::vector<int> paths;     // path index per entry, -1 for elements and tuples
        int e = -1;                 // target path for case 2, when f^A was given
        int l = 0;                  // segment for case 2
        std::vector<int> carriers;  // the two paths in 3a, the two levels in 3b
    };

    /// Which case of the construction handles c. Without fa, case 2 is
    /// reported as 2b or 2c from the entries alone and e stays -1.
    auto classify(const DMeta & meta, const std::vector<int> & c, const OpTable * fa = nullptr) -> CaseData;

    /// An m-ary polymorphism of D(A) built from fa on A and fz on the zigzag,
    /// evaluated on demand.
    class LiftedOp
    {
        public:
            LiftedOp(const DMeta & meta, OpTable fa, OpTable fz);

            auto arity() const -> int
            {
                return _fa.arity;
            }

            auto operator() (const std::vector<int> & c) const -> int;

            auto on_a() const -> const OpTable &
            {
                return _fa;
            }

            auto on_z() const -> const OpTable &
            {
                return _fz;
            }

        private:
            const DMeta * _meta;
            OpTable _fa, _fz;

            auto apply_tuples(const std::vector<int> & ts) const -> int;
            auto case2(const std::vector<int> & c, const CaseData & d) const -> int;
    };

    /// Checks fa against A and the arities, then lifts.
    auto lift_op(const DMeta & meta, const OpTable & fa, const OpTable & fz) -> LiftedOp;

    /// Evaluates the op on every m-tuple of edges; the first failure, if any.
    auto polymorphism_failure(const DMeta & meta, const LiftedOp & f) -> std::optional<std::string>;

    using LiftedMap = std::map<std::string, LiftedOp>;

    /// Evaluates every identity over all assignments of its variables.
    auto identity_failure(const DMeta & meta, const LiftedMap & ops, const IdentitySet & sigma) -> std::optional<std::string>;

    /// Linear, idempotent, and each identity balanced or in at most two
    /// variables; throws ShapeViolation otherwise.
    auto check_shape(const IdentitySet & sigma) -> void;

    struct LiftReport
    {
        OpMap on_a, on_z;
        LiftedMap lifted;
        std::vector<std::string> lines;
        bool ok = false;
    };

    /// Lifts witnesses of sigma on A and on the zigzag to D(A) and verifies
    /// them exhaustively. Missing witnesses are searched for. Returns nullopt
    /// when A itself has no witnesses.
    auto lift_all(const DMeta & meta, const IdentitySet & sigma,
            const std::optional<OpMap> & on_a = std::nullopt,
            const std::optional<OpMap> & on_z = std::nullopt) -> std::optional<LiftReport>;

    auto lift_endomorphism(const DMeta & meta, const Hom & phi) -> Hom;
    auto restrict_endomorphism(const DMeta & meta, const Hom & big_phi) -> Hom;
}

#endif
