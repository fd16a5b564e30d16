#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdc/bits.hpp"
#include "pdc/su_modified.hpp"

namespace pdc {

// NAND circuit given layer by layer. Layer 0 holds the inputs, layer `depth`
// the outputs (its first n_out gates). Gate indices are 0-based.
struct LayeredCircuit {
    int width = 0;
    int depth = 0;
    int n_in = 0;
    int n_out = 0;
    // feeds[i-1][w] = (u, v) for gate w of layer i, or (-1, -1) when unused.
    std::vector<std::vector<std::array<int, 2>>> feeds;

    LayeredCircuit() = default;
    LayeredCircuit(int width, int depth, int n_in, int n_out);

    static LayeredCircuit random(int width, int depth, int n_in, int n_out, RandomStream& rng);
    // Pairs of NAND(a, a) layers; depth must be even.
    static LayeredCircuit passthrough(int n, int depth);

    void set_gate(int layer, int w, int u, int v);
    bool wire(int layer, int w, int u, int v) const;
    void validate() const;

    // Gate values of every layer, unused positions 0.
    std::vector<std::vector<int>> layer_values(const BitString& input) const;
    BitString evaluate(const BitString& input) const;

    // "width depth n_in n_out" then one "i w u v" line per gate.
    void write(std::ostream& os) const;
    static LayeredCircuit read(std::istream& is);
};

// The polynomials P_1..P_d' of a layered circuit on a fixed input over F_p,
// all viewed as 3m-variate (trailing dummy variables). H is {0, ..., h-1}.
class PolyLadder {
public:
    PolyLadder(FieldPtr f, int h, int m, LayeredCircuit circuit, BitString input);

    const FieldPtr& field() const { return f_; }
    int h() const { return h_; }
    int m() const { return m_; }
    int arity() const { return 3 * m_; }
    int d_prime() const { return (2 * m_ + 1) * c_.depth + 1; }
    int degree() const { return 5 * m_ * (h_ - 1); }
    const LayeredCircuit& circuit() const { return c_; }
    const BitString& input() const { return input_; }

    // (i, j) with P_idx = alpha_(i,j); idx = 1 gives (0, 0).
    std::pair<int, int> stage(int idx) const;
    // Base-h digits of g, least significant first.
    Point id(int g) const;

    Elem base_eval(const Point& w) const;
    Elem phi_hat(int layer, const Point& wuv) const;
    Elem dsr_eval(int idx, const Point& w, const PointOracle& prev) const;
    // P_idx through the dsr chain down to base_eval, no tables.
    Elem chain_eval(int idx, const Point& w) const;
    // Reads P_d'(id(g), 0^(2m)); throws ConsistencyError on a non-bit.
    int faithful_output(int g, const PointOracle& top) const;

    // Lazily tabulated bottom-up; throws ResourceError past the cap.
    std::shared_ptr<const TruthTable> table(int idx) const;

private:
    // lag[a] = L_a(x), the Lagrange basis of H at x.
    void lagrange(Elem x, Elem* lag) const;
    Elem delta_product(const Elem* lag, int g) const;

    FieldPtr f_;
    int h_, m_;
    LayeredCircuit c_;
    BitString input_;
    std::vector<Elem> denom_inv_;
    mutable std::vector<std::shared_ptr<const TruthTable>> tables_;
};

// Degree of P restricted to t -> a + t b.
int line_degree(const PointOracle& p, const Field& f, const Point& a, const Point& b);

struct CtParams {
    FieldPtr field;
    int h = 2;
    int m = 1;
    int c1 = 8;
    ModifiedParams recon;

    // Toy settings: recon over 3m variables with degree 5m(h-1), r = 1.
    static CtParams toy(FieldPtr f, int h, int m, int M);
    int samples() const { return c1 * m * field->k(); }
    // Violations of log T <= h < p <= h^27 <= T (empty at paper fidelity).
    std::vector<std::string> regime_violations(const LayeredCircuit& c) const;
    void validate(const LayeredCircuit& c) const;
};

HittingSet ct_generate(const PolyLadder& ladder, const CtParams& params);

using LayerOracles = std::function<std::unique_ptr<ReconOracles>(int idx, const PointOracle& layer)>;

struct CtLayerLog {
    int index = 0;
    bool reconstructed = false;
    bool verified = false;
    std::size_t candidate = 0;
};

struct CtOutcome {
    std::optional<BitString> output;  // empty means bottom
    std::vector<CtLayerLog> layers;
};

CtOutcome ct_reconstruct(const PolyLadder& ladder, const LayerOracles& oracles, const CtParams& params,
                         RandomStream rng);
CtOutcome ct_reconstruct(const PolyLadder& ladder, const Distinguisher& d, const CtParams& params, RandomStream rng);

}  // namespace pdc
