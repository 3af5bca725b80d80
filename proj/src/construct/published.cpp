// Depth-2 majority circuits for n = 7, 9, 11 with k = n - 2, and the k = 5
// example for n = 7. Each row lists the inputs of one bottom majority gate;
// a repeated variable counts twice.

#include <string>

#include "construct/construct.hpp"
#include "core/error.hpp"

namespace majcirc::construct {

namespace {

const std::vector<std::vector<std::uint32_t>> kIntro7 = {
    {1, 2, 3, 4, 5}, {1, 2, 5, 6, 7}, {1, 3, 4, 6, 6}, {2, 3, 3, 5, 6}, {2, 4, 5, 7, 7},
};

const std::vector<std::vector<std::uint32_t>> kN7 = {
    {1, 2, 3, 4, 5}, {1, 2, 3, 6, 7}, {1, 4, 5, 6, 7}, {2, 2, 4, 5, 6}, {3, 4, 5, 7, 7},
};

const std::vector<std::vector<std::uint32_t>> kN9 = {
    {1, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 8, 9}, {1, 2, 3, 6, 7, 8, 9}, {1, 4, 5, 6, 7, 8, 9},
    {1, 3, 5, 5, 7, 9, 9}, {1, 2, 4, 6, 6, 8, 8}, {2, 3, 4, 5, 6, 7, 8},
};

const std::vector<std::vector<std::uint32_t>> kN11 = {
    {1, 2, 3, 4, 5, 6, 7, 8, 9},     {1, 2, 3, 4, 5, 6, 7, 10, 11}, {1, 2, 3, 4, 5, 8, 9, 10, 11},
    {1, 2, 3, 6, 7, 8, 9, 10, 11},   {1, 4, 5, 6, 7, 8, 9, 10, 11}, {1, 2, 2, 4, 6, 6, 8, 10, 10},
    {2, 4, 4, 5, 6, 7, 8, 10, 11},   {3, 3, 5, 5, 7, 7, 8, 9, 11},  {3, 3, 6, 8, 9, 9, 9, 10, 10},
};

}  // namespace

std::optional<PublishedTag> published_tag(std::string_view name) {
  if (name == "intro7") return PublishedTag::intro7;
  if (name == "n7") return PublishedTag::n7;
  if (name == "n9") return PublishedTag::n9;
  if (name == "n11") return PublishedTag::n11;
  return std::nullopt;
}

std::string_view published_name(PublishedTag tag) {
  switch (tag) {
    case PublishedTag::intro7: return "intro7";
    case PublishedTag::n7: return "n7";
    case PublishedTag::n9: return "n9";
    case PublishedTag::n11: return "n11";
  }
  throw Error(ErrorKind::invalid_argument, "unknown published circuit");
}

const std::vector<std::vector<std::uint32_t>>& published_rows(PublishedTag tag) {
  switch (tag) {
    case PublishedTag::intro7: return kIntro7;
    case PublishedTag::n7: return kN7;
    case PublishedTag::n9: return kN9;
    case PublishedTag::n11: return kN11;
  }
  throw Error(ErrorKind::invalid_argument, "unknown published circuit");
}

LayeredCircuit published_circuit(PublishedTag tag) {
  const std::uint32_t n = (tag == PublishedTag::n9) ? 9 : (tag == PublishedTag::n11) ? 11 : 7;
  return circuit_from_rows(n, published_rows(tag));
}

}  // namespace majcirc::construct
