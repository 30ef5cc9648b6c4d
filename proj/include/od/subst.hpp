#pragma once

#include "od/order.hpp"
#include "od/report.hpp"
#include "od/term.hpp"

namespace od {

// The map sending pi to a collapse below it and acting structurally above
// pi: terms below pi are left alone, pi becomes the target, and compound
// terms at or above pi map component-wise.
struct Substitution {
  TermPtr target;
  Flavor flavor;
};

// target must be a well-formed collapse sitting strictly below pi.
Substitution make_subst(TermPtr target, Flavor flavor,
                        OrderCache* cache = nullptr);

// xi is in the domain when every collapse tracked through pi inside it stays
// strictly below the target.
bool in_domain(const Substitution& f, const TermPtr& xi,
               OrderCache* cache = nullptr);

// Image of xi, canonicalized.  Defined for every term; the embedding laws
// are only promised on the domain.
TermPtr apply(const Substitution& f, const TermPtr& xi,
              OrderCache* cache = nullptr);

// Checks the embedding laws on the in-domain part of terms: pi maps to the
// target, terms below pi are fixed, the order is preserved, images stay
// well-formed, the map commutes with sums and phi, and every collapse
// tracked through pi in an image is the image of a tracked collapse or is
// tracked inside the target.
CheckReport verify_embedding(const Substitution& f,
                             const std::vector<TermPtr>& terms,
                             OrderCache* cache = nullptr);

}  // namespace od
