#include "zipstrata/group_descriptor.hpp"

#include "zipstrata/error.hpp"
#include "zipstrata/matrix.hpp"

namespace zipstrata {

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::GL: return "GL";
    case GroupKind::SL: return "SL";
    case GroupKind::Sp: return "Sp";
    case GroupKind::GSp: return "GSp";
    case GroupKind::Product: return "Product";
  }
  return "?";
}

GroupDescriptor GroupDescriptor::simple(GroupKind kind, int size) {
  if (kind == GroupKind::Product) throw Error(ErrorKind::unsupported_group, "use product()");
  bool sym = kind == GroupKind::Sp || kind == GroupKind::GSp;
  if (size < 2 || size > kMaxDim || (sym && size % 2))
    throw Error(ErrorKind::unsupported_group, std::string(to_string(kind)) + std::to_string(size));
  GroupDescriptor g;
  g.kind_ = kind;
  g.dim_ = size;
  g.eps_dim_ = sym ? size / 2 : size;
  g.factors_.push_back({kind, size, 0, 0});
  g.name_ = std::string(to_string(kind)) + std::to_string(size);
  return g;
}

GroupDescriptor GroupDescriptor::product(const std::vector<GroupDescriptor>& parts) {
  if (parts.empty()) throw Error(ErrorKind::unsupported_group, "empty product");
  if (parts.size() == 1) return parts[0];
  GroupDescriptor g;
  g.kind_ = GroupKind::Product;
  for (const auto& part : parts) {
    for (auto f : part.factors_) {
      f.offset += g.dim_;
      f.eps_offset += g.eps_dim_;
      g.factors_.push_back(f);
    }
    g.dim_ += part.dim_;
    g.eps_dim_ += part.eps_dim_;
    if (!g.name_.empty()) g.name_ += "x";
    g.name_ += part.name_;
  }
  if (g.dim_ > kMaxDim) throw Error(ErrorKind::unsupported_group, g.name_ + " too large");
  return g;
}

GroupDescriptor GroupDescriptor::parse(const std::string& text) {
  std::vector<GroupDescriptor> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('x', pos);
    std::string part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::size_t digits = part.find_first_of("0123456789");
    if (digits == std::string::npos || digits == 0)
      throw Error(ErrorKind::unsupported_group, "cannot parse '" + text + "'");
    std::string head = part.substr(0, digits);
    int size = 0;
    try {
      std::size_t used = 0;
      size = std::stoi(part.substr(digits), &used);
      if (used != part.size() - digits) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::unsupported_group, "cannot parse '" + text + "'");
    }
    GroupKind kind;
    if (head == "GL") kind = GroupKind::GL;
    else if (head == "SL") kind = GroupKind::SL;
    else if (head == "Sp") kind = GroupKind::Sp;
    else if (head == "GSp") kind = GroupKind::GSp;
    else throw Error(ErrorKind::unsupported_group, "unknown group '" + head + "'");
    parts.push_back(simple(kind, size));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return product(parts);
}

SeriesDescriptor GroupDescriptor::series() const {
  SeriesDescriptor s;
  for (const auto& f : factors_) {
    switch (f.kind) {
      case GroupKind::GL:
        s.components.push_back({'A', f.size - 1});
        s.extra_torus_rank += 1;
        break;
      case GroupKind::SL: s.components.push_back({'A', f.size - 1}); break;
      case GroupKind::Sp: s.components.push_back({'C', f.size / 2}); break;
      case GroupKind::GSp:
        s.components.push_back({'C', f.size / 2});
        s.extra_torus_rank += 1;
        break;
      case GroupKind::Product: break;
    }
  }
  return s;
}

int GroupDescriptor::factor_of(int coord) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (coord >= factors_[i].offset && coord < factors_[i].offset + factors_[i].size) return static_cast<int>(i);
  throw Error(ErrorKind::constraint_violation, "coordinate " + std::to_string(coord));
}

bool GroupDescriptor::symplectic(int factor) const {
  auto k = factors_.at(factor).kind;
  return k == GroupKind::Sp || k == GroupKind::GSp;
}

int GroupDescriptor::mirror(int coord) const {
  const auto& f = factors_[factor_of(coord)];
  return f.offset + f.size - 1 - (coord - f.offset);
}

int GroupDescriptor::form_sign(int coord) const {
  const auto& f = factors_[factor_of(coord)];
  return coord - f.offset < f.size / 2 ? 1 : -1;
}

Weight GroupDescriptor::coordinate_weight(int coord) const {
  int fi = factor_of(coord);
  const auto& f = factors_[fi];
  Weight w(eps_dim_, 0);
  int local = coord - f.offset;
  if (!symplectic(fi)) {
    w[f.eps_offset + local] = 1;
  } else if (local < f.size / 2) {
    w[f.eps_offset + local] = 1;
  } else {
    w[f.eps_offset + (f.size - 1 - local)] = -1;
  }
  return w;
}

GroupDescriptor::Entry GroupDescriptor::root_entry(const Weight& root) const {
  for (const auto& f : factors_) {
    for (int a = f.offset; a < f.offset + f.size; ++a)
      for (int b = f.offset; b < f.offset + f.size; ++b) {
        if (a == b) continue;
        Weight wa = coordinate_weight(a), wb = coordinate_weight(b);
        bool match = true;
        for (int k = 0; k < eps_dim_; ++k)
          if (wa[k] - wb[k] != root[k]) match = false;
        if (match) return {a, b};
      }
  }
  throw Error(ErrorKind::constraint_violation, "weight is not a root of " + name_);
}

}  // namespace zipstrata
