#include "distlam/generate.hpp"

#include <cassert>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace distlam {

namespace {

// splitmix64; stable across platforms.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    assert(n > 0);
    return static_cast<std::size_t>(rng() % n);
}

// Weighted choice; weights of unavailable options are zero.
std::size_t pick_weighted(std::mt19937_64& rng,
                          const std::vector<unsigned>& weights) {
    unsigned total = 0;
    for (unsigned w : weights) total += w;
    assert(total > 0);
    unsigned roll = static_cast<unsigned>(rng() % total);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (roll < weights[i]) return i;
        roll -= weights[i];
    }
    return weights.size() - 1;
}

Name pool_var(std::size_t i) { return "x" + std::to_string(i); }

Name pool_atom(std::size_t i) {
    // A, B, C, ... then A1, B1, ...
    std::string name(1, static_cast<char>('A' + i % 26));
    if (i >= 26) name += std::to_string(i / 26);
    return name;
}

TypePtr gen_type_at(std::mt19937_64& rng, std::size_t budget,
                    std::size_t atom_pool) {
    enum { KAtom, KArrow, KConj };
    std::vector<unsigned> weights{40, 0, 0};
    if (budget >= 3) {
        weights[KArrow] = 35;
        weights[KConj] = 25;
    }
    switch (pick_weighted(rng, weights)) {
        case KAtom:
            return atom(pool_atom(pick(rng, atom_pool)));
        case KArrow: {
            std::size_t left = 1 + pick(rng, budget - 2);
            return arrow(gen_type_at(rng, left, atom_pool),
                         gen_type_at(rng, budget - 1 - left, atom_pool));
        }
        default: {
            std::size_t left = 1 + pick(rng, budget - 2);
            return conj(gen_type_at(rng, left, atom_pool),
                        gen_type_at(rng, budget - 1 - left, atom_pool));
        }
    }
}

TermPtr gen_term_at(std::mt19937_64& rng, std::size_t budget,
                    const GenConfig& cfg) {
    enum { KVar, KAbs, KApp, KPair, KProj };
    std::vector<unsigned> weights{20, 0, 0, 0, 0};
    if (budget >= 2) {
        weights[KAbs] = 20;
        weights[KProj] = 20;
    }
    if (budget >= 3) {
        weights[KApp] = 25;
        weights[KPair] = 15;
    }
    switch (pick_weighted(rng, weights)) {
        case KVar:
            return var(pool_var(pick(rng, cfg.var_pool)));
        case KAbs: {
            Name binder = pool_var(pick(rng, cfg.var_pool));
            TypePtr annot =
                cfg.annotated ? gen_type_at(rng, 3, cfg.atom_pool) : nullptr;
            TermPtr body = gen_term_at(rng, budget - 1, cfg);
            return annot ? abs(binder, annot, body) : abs(binder, body);
        }
        case KApp: {
            std::size_t left = 1 + pick(rng, budget - 2);
            return app(gen_term_at(rng, left, cfg),
                       gen_term_at(rng, budget - 1 - left, cfg));
        }
        case KPair: {
            std::size_t left = 1 + pick(rng, budget - 2);
            return pair(gen_term_at(rng, left, cfg),
                        gen_term_at(rng, budget - 1 - left, cfg));
        }
        default:
            return proj(1 + static_cast<int>(pick(rng, 2)),
                        gen_term_at(rng, budget - 1, cfg));
    }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix(base + 0x9e3779b97f4a7c15ull * (index + 1));
}

TermPtr gen_term(const GenConfig& cfg) {
    assert(cfg.max_size >= 1 && cfg.var_pool >= 1 && cfg.atom_pool >= 1);
    std::mt19937_64 rng(cfg.seed);
    TermPtr t = gen_term_at(rng, cfg.max_size, cfg);
    if (cfg.closed) {
        for (const Name& x : free_vars(t)) t = abs(x, t);
    }
    return t;
}

TypePtr gen_type(const GenConfig& cfg, std::size_t max_size) {
    std::mt19937_64 rng(cfg.seed);
    return gen_type_at(rng, max_size, cfg.atom_pool);
}

// ---------------------------------------------------------------------------
// Isomorphism neighborhood and bounded search
// ---------------------------------------------------------------------------

std::vector<TypePtr> iso_neighbors(const TypePtr& t) {
    std::vector<TypePtr> out;
    // Rewrites at the root, both orientations.
    if (const auto* a = as_arrow(t)) {
        if (const auto* c = as_conj(a->cod)) {
            out.push_back(conj(arrow(a->dom, c->left), arrow(a->dom, c->right)));
        }
    }
    if (const auto* c = as_conj(t)) {
        const auto* l = as_arrow(c->left);
        const auto* r = as_arrow(c->right);
        if (l && r && type_eq(l->dom, r->dom)) {
            out.push_back(arrow(l->dom, conj(l->cod, r->cod)));
        }
    }
    // Congruence: rewrites inside subterms.
    if (const auto* a = as_arrow(t)) {
        for (const TypePtr& d : iso_neighbors(a->dom)) out.push_back(arrow(d, a->cod));
        for (const TypePtr& c : iso_neighbors(a->cod)) out.push_back(arrow(a->dom, c));
    } else if (const auto* c = as_conj(t)) {
        for (const TypePtr& l : iso_neighbors(c->left)) out.push_back(conj(l, c->right));
        for (const TypePtr& r : iso_neighbors(c->right)) out.push_back(conj(c->left, r));
    }
    return out;
}

bool iso_proof_search(const TypePtr& a, const TypePtr& b, std::size_t depth) {
    std::string goal = type_key(b);
    if (type_key(a) == goal) return true;
    std::unordered_set<std::string> visited{type_key(a)};
    std::vector<TypePtr> frontier{a};
    for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<TypePtr> next;
        for (const TypePtr& t : frontier) {
            for (const TypePtr& n : iso_neighbors(t)) {
                std::string key = type_key(n);
                if (key == goal) return true;
                if (visited.insert(std::move(key)).second) next.push_back(n);
            }
        }
        frontier = std::move(next);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Typed-term generation
// ---------------------------------------------------------------------------

namespace {

struct TypedGen {
    std::mt19937_64 rng;
    std::size_t atom_pool;
    GenStats* stats;
    std::size_t next_binder = 0;

    explicit TypedGen(std::uint64_t seed, std::size_t atoms, GenStats* st)
        : rng(seed), atom_pool(atoms), stats(st) {}

    TypePtr detour(const TypePtr& goal) {
        TypePtr cur = goal;
        std::size_t steps = 1 + pick(rng, 2);
        bool moved = false;
        for (std::size_t i = 0; i < steps; ++i) {
            auto ns = iso_neighbors(cur);
            if (ns.empty()) break;
            cur = ns[pick(rng, ns.size())];
            moved = true;
        }
        if (moved && stats) stats->detours++;
        return cur;
    }

    // Kept small: a detour can duplicate domains, and deep recursion would
    // otherwise compound them into huge goals.
    static constexpr std::size_t kDetourSizeLimit = 24;

    // Derives a term of type `goal` in ctx, or nullptr if the goal cannot be
    // met (an atom with no usable variable).
    TermPtr derive(const TypingContext& ctx, TypePtr goal, std::size_t budget) {
        if (budget == 0) budget = 1;  // introductions below still shrink goal
        if (budget > 2 && type_size(goal) <= kDetourSizeLimit &&
            pick(rng, 4) == 0) {
            goal = detour(goal);
        }

        std::vector<const std::pair<Name, TypePtr>*> axioms;
        {
            // Most recent binding per name only (shadowing).
            std::unordered_set<std::string> seen;
            const auto& bindings = ctx.bindings();
            for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
                if (!seen.insert(it->first).second) continue;
                if (types_iso(it->second, goal)) axioms.push_back(&*it);
            }
        }
        bool can_intro = as_arrow(goal) || as_conj(goal);
        bool can_elim = budget >= 5;

        enum { KAx, KIntro, KApp, KProj };
        std::vector<unsigned> weights{axioms.empty() ? 0u : 25u,
                                      can_intro ? 35u : 0u,
                                      can_elim ? 20u : 0u,
                                      can_elim ? 15u : 0u};
        if (budget <= 1 || (budget <= 2 && !can_intro)) {
            // Budget exhausted: take a variable if one fits, else the
            // smallest introduction.
            if (!axioms.empty()) {
                return var(axioms[pick(rng, axioms.size())]->first);
            }
            weights = {0, can_intro ? 1u : 0u, 0, 0};
        }
        if (weights[KAx] + weights[KIntro] + weights[KApp] + weights[KProj] == 0) {
            return nullptr;  // atom goal, nothing in scope
        }
        switch (pick_weighted(rng, weights)) {
            case KAx:
                return var(axioms[pick(rng, axioms.size())]->first);
            case KIntro: {
                if (const auto* a = as_arrow(goal)) {
                    Name x = "b" + std::to_string(next_binder++);
                    TermPtr body =
                        derive(ctx.extended(x, a->dom), a->cod, budget - 1);
                    return body ? abs(x, a->dom, body) : nullptr;
                }
                const auto* c = as_conj(goal);
                std::size_t half = (budget - 1) / 2;  // budget >= 1
                std::size_t rest = budget - 1 - half;
                TermPtr left = derive(ctx, c->left, std::max<std::size_t>(half, 1));
                TermPtr right =
                    derive(ctx, c->right, std::max<std::size_t>(rest, 1));
                return left && right ? pair(left, right) : nullptr;
            }
            case KApp: {
                TypePtr dom = gen_type_at(rng, 3, atom_pool);
                TypePtr fn_goal = arrow(dom, goal);
                TermPtr fn = derive(ctx, fn_goal, (budget * 2) / 3);
                TermPtr arg = derive(ctx, dom, budget / 3);
                if (!fn || !arg) return nullptr;
                if (stats && as_conj(type_nf(fn_goal))) stats->conj_headed_apps++;
                return app(fn, arg);
            }
            default: {
                TypePtr other = gen_type_at(rng, 3, atom_pool);
                int index = 1 + static_cast<int>(pick(rng, 2));
                TypePtr body_goal =
                    index == 1 ? conj(goal, other) : conj(other, goal);
                TermPtr body = derive(ctx, body_goal, budget - 1);
                return body ? proj(index, body) : nullptr;
            }
        }
    }
};

}  // namespace

std::pair<TypingContext, TermPtr> gen_typed_term(const GenConfig& cfg,
                                                 GenStats* stats) {
    assert(cfg.max_size >= 1 && cfg.atom_pool >= 1);
    TypedGen gen(cfg.seed, cfg.atom_pool, stats);
    TypingContext ctx;
    // One variable per atom keeps every atomic goal satisfiable.
    for (std::size_t i = 0; i < cfg.atom_pool; ++i) {
        ctx.push("u" + std::to_string(i), atom(pool_atom(i)));
    }
    for (std::size_t i = 0; i < cfg.var_pool; ++i) {
        ctx.push("w" + std::to_string(i), gen_type_at(gen.rng, 5, cfg.atom_pool));
    }
    TermPtr term;
    for (int attempt = 0; !term; ++attempt) {
        TypePtr goal = gen_type_at(gen.rng, 5, cfg.atom_pool);
        term = gen.derive(ctx, goal, cfg.max_size);
        if (attempt > 64) {
            throw std::logic_error("typed-term generation failed to converge");
        }
    }
    // Soundness is unconditional: the derivation rules mirror the typing
    // rules, so infer must accept.
    infer(ctx, term);
    return {ctx, term};
}

TermPtr gen_term_of_type(const TypingContext& ctx, const TypePtr& goal,
                         std::uint64_t seed, std::size_t budget) {
    TypedGen gen(seed, 2, nullptr);
    // Binder names must not collide with context names.
    gen.next_binder = 1000;
    for (int attempt = 0; attempt < 16; ++attempt) {
        if (TermPtr t = gen.derive(ctx, goal, budget)) return t;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

std::vector<TypePtr> enumerate_types(std::size_t max_size,
                                     std::size_t atom_pool) {
    std::vector<std::vector<TypePtr>> by_size(max_size + 1);
    for (std::size_t n = 1; n <= max_size; ++n) {
        if (n == 1) {
            for (std::size_t i = 0; i < atom_pool; ++i) {
                by_size[1].push_back(atom(pool_atom(i)));
            }
            continue;
        }
        for (std::size_t left = 1; left + 1 < n; ++left) {
            std::size_t right = n - 1 - left;
            for (const TypePtr& l : by_size[left]) {
                for (const TypePtr& r : by_size[right]) {
                    by_size[n].push_back(arrow(l, r));
                    by_size[n].push_back(conj(l, r));
                }
            }
        }
    }
    std::vector<TypePtr> out;
    for (auto& bucket : by_size) {
        out.insert(out.end(), bucket.begin(), bucket.end());
    }
    return out;
}

namespace {

// Terms of exactly size n under `depth` binders.
void enumerate_at(std::size_t n, std::size_t depth,
                  const std::vector<Name>& free_names,
                  const std::vector<TypePtr>& annots,
                  std::vector<TermPtr>& out) {
    if (n == 0) return;
    if (n == 1) {
        for (std::size_t i = 0; i < depth; ++i) {
            out.push_back(bvar(static_cast<int>(i)));
        }
        for (const Name& x : free_names) out.push_back(var(x));
        return;
    }
    std::vector<TermPtr> bodies;
    enumerate_at(n - 1, depth + 1, free_names, annots, bodies);
    for (const TermPtr& body : bodies) {
        for (const TypePtr& annot : annots) {
            out.push_back(abs_raw("x", annot, body));
        }
    }
    bodies.clear();
    enumerate_at(n - 1, depth, free_names, annots, bodies);
    for (const TermPtr& body : bodies) {
        out.push_back(proj(1, body));
        out.push_back(proj(2, body));
    }
    for (std::size_t left = 1; left + 1 < n; ++left) {
        std::vector<TermPtr> ls, rs;
        enumerate_at(left, depth, free_names, annots, ls);
        enumerate_at(n - 1 - left, depth, free_names, annots, rs);
        for (const TermPtr& l : ls) {
            for (const TermPtr& r : rs) {
                out.push_back(app(l, r));
                out.push_back(pair(l, r));
            }
        }
    }
}

}  // namespace

std::vector<TermPtr> enumerate_terms(std::size_t max_size,
                                     const std::vector<Name>& free_names,
                                     const std::vector<TypePtr>& annots) {
    std::vector<TermPtr> out;
    for (std::size_t n = 1; n <= max_size; ++n) {
        enumerate_at(n, 0, free_names, annots, out);
    }
    return out;
}

std::vector<TermPtr> enumerate_closed_terms(std::size_t max_size) {
    return enumerate_terms(max_size, {}, {nullptr});
}

}  // namespace distlam
