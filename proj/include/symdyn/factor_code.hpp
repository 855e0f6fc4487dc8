#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/sft.hpp"
#include "symdyn/spectral.hpp"

namespace symdyn {

/// A 1-block code: a total map from domain symbols onto an image alphabet.
class BlockCode {
 public:
  /// Throws InvalidArgument unless `labels` is total and hits every image
  /// symbol.
  BlockCode(Sft domain, std::vector<std::string> image_names, std::vector<Symbol> labels);
  /// Image alphabet in order of first appearance along the domain order.
  static BlockCode from_label_names(Sft domain, const std::vector<std::string>& label_names);
  static BlockCode identity(Sft domain);

  const Sft& domain() const { return domain_; }
  std::size_t image_size() const { return image_names_.size(); }
  const std::vector<std::string>& image_names() const { return image_names_; }
  const std::string& image_name(Symbol b) const { return image_names_.at(b); }
  std::optional<Symbol> find_image(std::string_view name) const;

  Symbol label(Symbol a) const { return labels_[a]; }
  const std::vector<Symbol>& labels() const { return labels_; }
  const std::vector<Symbol>& preimage(Symbol b) const { return preimages_.at(b); }
  SymbolWord image_of(const SymbolWord& word) const;

  std::string format_image_word(const SymbolWord& word) const;
  SymbolWord parse_image_word(std::string_view text) const;

 private:
  Sft domain_;
  std::vector<std::string> image_names_;
  std::vector<Symbol> labels_;
  std::vector<std::vector<Symbol>> preimages_;
};

/// Diamond test on the label-pair graph. Throws NotIrreducible.
bool is_finite_to_one(const BlockCode& code);

struct DegreeCertificate {
  std::size_t degree = 0;
  /// Image word W and coordinate i realizing the minimum.
  SymbolWord witness;
  std::size_t coordinate = 0;
  /// The domain symbols occurring at coordinate i of preimages of W.
  std::vector<Symbol> symbols;
  std::size_t length_cap = 0;
  /// Set when every reachable forward and backward preimage-symbol set was
  /// found within the cap and the capped minimum equals the global one.
  bool converged = false;
};

std::size_t default_length_cap(const BlockCode& code);

/// Minimal number of domain symbols at one coordinate over preimages of an
/// image word of length <= cap. Throws NotIrreducible, NotFiniteToOne.
DegreeCertificate degree(const BlockCode& code, std::size_t length_cap);
DegreeCertificate degree(const BlockCode& code);

struct SeparatedProduct {
  /// Label map onto the same image alphabet as the source code.
  BlockCode code;
  /// tuples[s] lists the domain symbols carried by product symbol s.
  std::vector<SymbolWord> tuples;
};

/// Shift of n-tuples of pairwise distinct, equally labelled domain symbols.
/// Throws EmptyShift when its essential part is empty.
SeparatedProduct build_separated_product(const BlockCode& code, std::size_t n);

/// Whether some allowed domain word carries the given image word.
bool image_word_check(const BlockCode& code, const SymbolWord& image_word);

/// Entropy enclosure of the image, from the subset-construction presentation.
Enclosure image_entropy(const BlockCode& code);

}  // namespace symdyn
