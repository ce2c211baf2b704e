#pragma once

#include <memory>
#include <utility>

namespace avc::logic {

// Immutable shared box for recursive value types. Copies share the node;
// equality is structural.
template <class T>
class Indirect {
public:
    Indirect(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}  // NOLINT: implicit by intent

    const T& operator*() const { return *ptr_; }
    const T* operator->() const { return ptr_.get(); }
    const T& get() const { return *ptr_; }

    friend bool operator==(const Indirect& a, const Indirect& b) { return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_; }

private:
    std::shared_ptr<const T> ptr_;
};

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace avc::logic
