#ifndef EQ_ELEM_HPP_
#define EQ_ELEM_HPP_

#include <memory>
#include <stdexcept>
#include <typeinfo>
#include <utility>

namespace eq {

// Type-erased, immutable carrier element. Each quantale knows the concrete
// type of its own elements and downcasts with get<T>().
class Elem {
 public:
  Elem() = default;

  template <typename T>
  static Elem make(T value) {
    Elem e;
    e.rep_ = std::make_shared<const T>(std::move(value));
    e.type_ = &typeid(T);
    return e;
  }

  template <typename T>
  const T& get() const {
    if (!rep_ || *type_ != typeid(T))
      throw std::logic_error("Elem: bad element cast");
    return *static_cast<const T*>(rep_.get());
  }

  template <typename T>
  bool holds() const {
    return rep_ && *type_ == typeid(T);
  }

  explicit operator bool() const { return rep_ != nullptr; }

 private:
  std::shared_ptr<const void> rep_;
  const std::type_info* type_ = nullptr;
};

}  // namespace eq

#endif  // EQ_ELEM_HPP_
