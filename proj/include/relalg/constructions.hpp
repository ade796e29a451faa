#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relalg/formula.hpp"
#include "relalg/structure.hpp"
#include "relalg/term.hpp"

namespace relalg {

/// Directed m-cycle with every vertex tripled: vertices a{i}_{j} (i in 1..m,
/// j in 1..3), relation E from every a{i}_{j} to every a{i'}_{j'} with
/// i' = (i mod m) + 1.
Structure build_cm(std::size_t m);

/// build_cm with each edge (u, u') replaced by a fresh auxiliary node w,
/// f(w) = u and g(w) = u'.
Structure build_cm_vee(std::size_t m);

struct XMember {
  std::string name;
  Term definition;
  Relation relation;
};

struct CounterexampleBundle {
  Structure c;
  std::size_t m = 0;
  std::size_t m_prime = 0;
  std::vector<XMember> x;  // f, g, id, id1, id2, f | id2, g | id2, 0
  Term separating;         // ((f^ ; g) ; ... ; (f^ ; g)) & id, m factors

  const XMember* find(const Relation& r) const;
};

CounterexampleBundle build_counterexample(std::size_t m, std::size_t m_prime);

/// (f^ ; g)^m & id.
Term separating_term(std::size_t m);

/// Whether every operation in the basis is function-preserving.
bool basis_function_preserving(const Basis& basis);

struct Claim2Report {
  bool pass = false;
  bool basis_function_preserving = true;
  bool complete = true;            // closure finished within budget
  bool subclaim1 = true;           // every member is contained in f | g | id
  std::size_t closure_size = 0;
  std::vector<std::string> members;  // X names reached, in closure order
  std::optional<Term> escapee;             // smallest witness of a relation outside X
  std::optional<Term> separating_witness;  // set when the closure reaches the separating relation
};

Claim2Report verify_claim2_desk(const CounterexampleBundle& bundle, const Basis& basis,
                                std::size_t budget = 100000);

struct SinkExtension {
  Structure structure;                  // over fhat, ghat, ehat; extra element "s"
  std::map<std::string, Term> recovery;  // f, g in terms of fhat, ghat, ehat
  Term total_separating;
};

SinkExtension sink_extension(const CounterexampleBundle& bundle);

struct Fig2 {
  Structure structure;
  std::string a;
};

/// Elements a, b0..b{n+k} over R1..R4.
Fig2 build_fig2(std::size_t n, std::size_t k);
Structure remove_b0(const Structure& s);
/// The five conjuncts with free variable u.
Formula phi_u();
/// x=y & exists u.(R1(u,x) & phi(u)).
Formula psi_xy();

}  // namespace relalg
