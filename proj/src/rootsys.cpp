#include "covollab/rootsys.hpp"

#include <algorithm>
#include <set>

namespace covollab::rootsys {

Family family_from_char(char c) {
    switch (c) {
        case 'A': return Family::A;
        case 'B': return Family::B;
        case 'C': return Family::C;
        case 'D': return Family::D;
        case 'E': return Family::E;
        case 'F': return Family::F;
        case 'G': return Family::G;
    }
    throw precondition_error(std::string("unknown family '") + c + "' (expected A-G)");
}

std::string RootSystemType::name() const {
    return std::string(1, char(family)) + std::to_string(rank);
}

bool type_supported(RootSystemType t) {
    switch (t.family) {
        case Family::A: return t.rank >= 1;
        case Family::B: return t.rank >= 2;
        case Family::C: return t.rank >= 2;
        case Family::D: return t.rank >= 2;
        case Family::E: return t.rank >= 6 && t.rank <= 8;
        case Family::F: return t.rank == 4;
        case Family::G: return t.rank == 2;
    }
    return false;
}

int height(const Root& r) {
    int h = 0;
    for (int c : r) h += c;
    return h;
}

namespace {

void require_supported(RootSystemType t) {
    if (!type_supported(t))
        throw precondition_error(
            t.name() + " unsupported (A r>=1, B r>=2, C r>=2, D r>=2, E 6..8, F 4, G 2)");
}

// Cartan matrix cartan[i][j] = <alpha_i, alpha_j> and the half-lengths
// d_i = (alpha_i,alpha_i)/2, Bourbaki numbering throughout.
void cartan_data(RootSystemType t, std::vector<std::vector<int>>& cartan,
                 std::vector<int>& dhalf) {
    int r = t.rank;
    cartan.assign(r, std::vector<int>(r, 0));
    dhalf.assign(r, 1);
    for (int i = 0; i < r; ++i) cartan[i][i] = 2;
    auto chain = [&](int upto) {  // single bonds alpha_1..alpha_upto
        for (int i = 0; i + 1 < upto; ++i) cartan[i][i + 1] = cartan[i + 1][i] = -1;
    };
    switch (t.family) {
        case Family::A:
            chain(r);
            break;
        case Family::B:  // alpha_r short, the rest long
            chain(r - 1);
            cartan[r - 2][r - 1] = -2;
            cartan[r - 1][r - 2] = -1;
            for (int i = 0; i < r - 1; ++i) dhalf[i] = 2;
            break;
        case Family::C:  // alpha_r long, the rest short
            chain(r - 1);
            cartan[r - 2][r - 1] = -1;
            cartan[r - 1][r - 2] = -2;
            dhalf[r - 1] = 2;
            break;
        case Family::D:
            chain(r - 1);
            if (r >= 3) cartan[r - 3][r - 1] = cartan[r - 1][r - 3] = -1;
            // r == 2: two orthogonal A_1 factors (Spin_4)
            break;
        case Family::E: {
            const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}, {6, 7}, {7, 8}};
            for (auto& e : edges)
                if (e[0] <= r && e[1] <= r)
                    cartan[e[0] - 1][e[1] - 1] = cartan[e[1] - 1][e[0] - 1] = -1;
            break;
        }
        case Family::F:  // alpha_1, alpha_2 long; double bond 2 => 3
            cartan[0][1] = cartan[1][0] = -1;
            cartan[2][3] = cartan[3][2] = -1;
            cartan[1][2] = -2;
            cartan[2][1] = -1;
            dhalf[0] = dhalf[1] = 2;
            break;
        case Family::G:  // alpha_1 short, alpha_2 long
            cartan[0][1] = -1;
            cartan[1][0] = -3;
            dhalf[1] = 3;
            break;
    }
}

}  // namespace

RootSystem RootSystem::build(RootSystemType t) {
    require_supported(t);
    RootSystem rs;
    rs.type_ = t;
    cartan_data(t, rs.cartan_, rs.dhalf_);
    int r = t.rank;

    // Close the simple roots under the simple reflections
    // sigma_j(beta) = beta - <beta,alpha_j> alpha_j, with
    // <beta,alpha_j> = sum_i beta_i cartan[i][j].
    std::set<Root> seen;
    std::vector<Root> work;
    for (int i = 0; i < r; ++i) {
        Root a(r, 0);
        a[i] = 1;
        seen.insert(a);
        work.push_back(a);
    }
    while (!work.empty()) {
        Root b = std::move(work.back());
        work.pop_back();
        for (int j = 0; j < r; ++j) {
            int pr = 0;
            for (int i = 0; i < r; ++i) pr += b[i] * rs.cartan_[i][j];
            Root s = b;
            s[j] -= pr;
            if (seen.insert(s).second) work.push_back(s);
        }
    }
    rs.roots_.assign(seen.begin(), seen.end());
    std::sort(rs.roots_.begin(), rs.roots_.end(), [](const Root& x, const Root& y) {
        int hx = height(x), hy = height(y);
        if (hx != hy) return hx < hy;
        return x < y;
    });
    for (size_t i = 0; i < rs.roots_.size(); ++i) rs.index_[rs.roots_[i]] = int(i);

    rs.highest_ = rs.roots_.back();
    rs.lmax_ = *std::max_element(rs.highest_.begin(), rs.highest_.end());

    // irreducible systems have a unique dominance-maximal root; the D_2
    // product has one per factor and keeps the lexicographic choice
    if (rs.irreducible()) {
        int maximal = 0;
        for (const Root& b : rs.roots_) {
            if (height(b) <= 0) continue;
            bool top = true;
            for (int i = 0; i < r && top; ++i) {
                Root s = b;
                s[i] += 1;
                top = !seen.count(s);
            }
            if (top) ++maximal;
        }
        if (maximal != 1) throw std::logic_error("dominance-maximal root not unique");
    }
    return rs;
}

std::vector<Root> RootSystem::positive_roots() const {
    std::vector<Root> pos;
    for (const Root& b : roots_)
        if (height(b) > 0) pos.push_back(b);
    return pos;
}

Root RootSystem::simple_root(int i) const {
    Root a(rank(), 0);
    a[i] = 1;
    return a;
}

int RootSystem::index_of(const Root& r) const {
    auto it = index_.find(r);
    if (it == index_.end()) throw precondition_error("root does not belong to " + type_.name());
    return it->second;
}

bool RootSystem::simply_laced() const {
    Family f = type_.family;
    return f == Family::A || f == Family::D || f == Family::E;
}

long RootSystem::bilinear(const Root& x, const Root& y) const {
    long s = 0;
    int r = rank();
    for (int i = 0; i < r; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < r; ++j)
            if (y[j]) s += long(x[i]) * y[j] * cartan_[i][j] * dhalf_[j];
    }
    return s;
}

int RootSystem::pairing(const Root& beta, const Root& alpha) const {
    index_of(beta);
    index_of(alpha);
    long num = 2 * bilinear(beta, alpha);
    long den = bilinear(alpha, alpha);
    if (den == 0 || num % den != 0) throw std::logic_error("non-integral Cartan pairing");
    return int(num / den);
}

Root RootSystem::reflect(const Root& alpha, const Root& beta) const {
    int pr = pairing(beta, alpha);
    Root s = beta;
    int r = rank();
    for (int i = 0; i < r; ++i) s[i] -= pr * alpha[i];
    return s;
}

std::vector<int> RootSystem::weight_coords(const Root& beta) const {
    index_of(beta);
    int r = rank();
    std::vector<int> w(r);
    for (int j = 0; j < r; ++j) {
        long num = 0;
        for (int i = 0; i < r; ++i) num += long(beta[i]) * cartan_[i][j];
        w[j] = int(num);
    }
    return w;
}

std::vector<Root> RootSystem::phi_alpha(const Root& alpha0) const {
    index_of(alpha0);
    std::vector<Root> out;
    int r = rank();
    for (const Root& b : roots_) {
        Root s(r);
        for (int i = 0; i < r; ++i) s[i] = alpha0[i] + b[i];
        if (!contains(s)) out.push_back(b);
    }
    return out;
}

RootSystem::XiCounts RootSystem::xi_counts(const std::vector<Root>& xi,
                                           const Root& alpha0) const {
    int r = rank();
    std::vector<bool> in_xi(r, false);
    for (const Root& a : xi) {
        int nz = -1;
        for (int i = 0; i < r; ++i)
            if (a[i]) {
                if (nz >= 0 || a[i] != 1) nz = -2;
                else nz = i;
            }
        if (nz < 0) throw precondition_error("Xi must consist of simple roots");
        in_xi[nz] = true;
    }
    index_of(alpha0);

    XiCounts out;
    std::set<Root> span;
    for (const Root& b : roots_) {
        if (height(b) <= 0) continue;
        bool hit = false;
        for (int i = 0; i < r && !hit; ++i) hit = in_xi[i] && b[i] != 0;
        if (hit) span.insert(b);
    }
    out.span.assign(span.begin(), span.end());

    for (const Root& b : phi_alpha(alpha0)) {
        Root nb(r);
        for (int i = 0; i < r; ++i) nb[i] = -b[i];
        bool in_minus_span = span.count(nb) != 0;
        bool in_span = span.count(b) != 0;
        if (!in_minus_span) ++out.n;
        if (in_span) ++out.m;
    }
    return out;
}

E6AuditReport RootSystem::e6_inequality_audit() const {
    if (!(type_.family == Family::E && type_.rank == 6))
        throw precondition_error("audit requires type E6, got " + type_.name());

    E6AuditReport rep;
    // Locate the unique simple root with coefficient 3 in the highest root.
    for (int i = 0; i < 6; ++i)
        if (highest_[i] == 3) rep.alpha0_index = i;
    Root a0 = simple_root(rep.alpha0_index);

    long phi_size = long(roots_.size());
    long not_minus_one = 0;
    for (const Root& b : roots_)
        if (pairing(a0, b) != -1) ++not_minus_one;

    std::vector<Root> phi0 = phi_alpha(a0);

    rep.all_inequalities = true;
    rep.all_balanced = true;
    for (uint32_t mask = 0; mask < 64; ++mask) {
        if (!(mask >> rep.alpha0_index & 1)) continue;
        std::vector<Root> xi;
        for (int i = 0; i < 6; ++i)
            if (mask >> i & 1) xi.push_back(simple_root(i));
        XiCounts c = xi_counts(xi, a0);

        E6SubsetRow row;
        row.subset_mask = mask;
        row.n = c.n;
        row.m = c.m;
        row.span_size = long(c.span.size());
        row.not_minus_one = not_minus_one;
        row.discrepancy = (c.n + c.m + 1) - not_minus_one;

        std::set<Root> support(c.span.begin(), c.span.end());
        for (const Root& b : c.span) {
            Root nb(6);
            for (int i = 0; i < 6; ++i) nb[i] = -b[i];
            support.insert(nb);
        }
        for (const Root& b : phi0) {
            bool in = support.count(b) != 0;  // support is negation-closed
            if (!in) ++row.n_sym;
            else ++row.m_sym;
        }
        row.discrepancy_sym = (row.n_sym + row.m_sym + 1) - not_minus_one;

        for (const Root& b : c.span) {
            int pr = pairing(b, a0);
            if (pr == -1) ++row.span_balance_minus;
            if (pr == 1) ++row.span_balance_plus;
        }
        for (const Root& b : support) {
            int pr = pairing(b, a0);
            if (pr == -1) ++row.sym_balance_minus;
            if (pr == 1) ++row.sym_balance_plus;
        }

        row.inequality_ok =
            c.n + c.m + 1 < phi_size && row.n_sym + row.m_sym + 1 < phi_size;
        row.balance_ok = row.sym_balance_minus == row.sym_balance_plus;
        rep.all_inequalities = rep.all_inequalities && row.inequality_ok;
        rep.all_balanced = rep.all_balanced && row.balance_ok;
        rep.rows.push_back(row);
    }
    return rep;
}

SimplyLacedReport RootSystem::simply_laced_audit() const {
    if (!simply_laced())
        throw precondition_error(type_.name() +
                                 " is not simply laced; the remark needs type A, D, or E");
    SimplyLacedReport rep;
    int r = rank();
    for (const Root& a : roots_) {
        for (const Root& b : roots_) {
            ++rep.ordered_pairs;
            Root s(r);
            for (int i = 0; i < r; ++i) s[i] = a[i] + b[i];
            bool sum_is_root = contains(s);
            bool pair_minus_one = pairing(a, b) == -1;
            // (i) alpha+beta in Phi  iff  <alpha,beta> = -1
            if (sum_is_root != pair_minus_one)
                rep.violations.push_back({a, b, "sum-root iff pairing -1"});
            // (ii) when the sum is a root: <alpha,beta> = -1 iff <alpha,alpha+beta> = 1
            if (sum_is_root && pair_minus_one != (pairing(a, s) == 1))
                rep.violations.push_back({a, b, "pairing -1 iff <a,a+b> = 1"});
        }
    }
    return rep;
}

}  // namespace covollab::rootsys
