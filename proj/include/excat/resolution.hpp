#pragma once

#include "excat/classify.hpp"
#include "excat/functorcat.hpp"

namespace excat {

// A complex concentrated in degrees <= 0 that is left Ext-acyclic in all
// negative degrees, with determinate witnesses.
struct ExtResolution {
  Complex complex;
  bool bounded = true;
  std::string certification;  // how acyclicity was established
};

// Verifies the degree window and the acyclicity verdicts; throws on a No
// verdict and on UnknownUpToBound (which disqualifies).
ExtResolution make_ext_resolution(const Complex& c, const ExactSubcat& e);

// Accepts a complex isomorphic (degreewise, compatibly with differentials)
// to a verified resolution direct-summed with contractibles; acyclicity is
// inherited along homotopy retracts.
ExtResolution ext_resolution_by_isomorphism(const Complex& c, const std::string& provenance);

struct LiftResult {
  Complex w;
  ChainMap g;      // w -> x, an E-quasi-isomorphism, identity in degrees >= -1
  ChainMap f_hat;  // w -> y, agrees with the seed square in degrees >= -1
  std::vector<std::pair<ModuleMap, ModuleMap>> pullback_conflations;  // (inflation, deflation) certificates
};

// The inductive lift of a partial square to a chain map up to
// quasi-isomorphism. Seeds: f0 : X^0 -> Y^0 and f_minus1 : X^{-1} -> Y^{-1}
// with f0 o d_X^{-1} = d_Y^{-1} o f_minus1.
LiftResult extend_to_chain_map(const Complex& x, const ExtResolution& y, const ExactSubcat& e, const ModuleMap& f0,
                               const ModuleMap& f_minus1);

struct NullHomotopyResult {
  Complex w;
  ChainMap g;                  // w -> x, E-quasi-isomorphism
  std::map<int, ModuleMap> h;  // (f g)^n = d_Y^{n-1} h^n + h^{n+1} d_W^n
};

// Given f : X -> Y between Ext-resolutions and h0 with f^0 = d_Y^{-1} h0,
// produces a quasi-isomorphism g with f g null-homotopic.
NullHomotopyResult null_homotopy_after_qis(const ChainMap& f, const ExactSubcat& e, const ModuleMap& h0);

struct HorseshoeResult {
  Complex w;
  ChainMap g;          // w -> z, E-quasi-isomorphism
  ChainMap connecting; // shift^{-1} w -> x
  ExtResolution resolution;  // cone(connecting), resolves the middle functor
};

// Horseshoe construction: a short exact sequence of functors
// 0 -> E -> F -> G -> 0 (alpha : E -> F, beta : F -> G on presentations)
// with Ext-resolutions x of E and z of G.
HorseshoeResult horseshoe(const FunctorMap& alpha, const FunctorMap& beta, const ExtResolution& x,
                          const ExtResolution& z, const ExactSubcat& e);

struct PaddedPresentation {
  ExtResolution resolution;   // d^{-1} = f (+) t with t a split epimorphism
  ModuleMap t;                // the split epimorphism block
  ChainMap iso_from_padded;   // the recorded isomorphism from the direct-sum complex
};

// Reshapes a resolution of coker Y(d^{-1}) so that its (-1)-differential
// contains a prescribed presentation map f as a direct block.
PaddedPresentation pad_presentation(const ModuleMap& f, const ExtResolution& resolution_of_coker,
                                    const ExactSubcat& e);

struct TransferResult {
  ExtResolution w;  // over e
  ChainMap f;       // w -> x, an ambient quasi-isomorphism
};

// Resolution transfer along a resolving subcategory e of the ambient
// subcategory f_ambient; bounded inputs give bounded outputs when finite
// E-resolutions of the bottom pullback exist within depth.
TransferResult transfer_resolution(const ExtResolution& x, const ExactSubcat& e, const ExactSubcat& f_ambient,
                                   int depth = 8);

}  // namespace excat
