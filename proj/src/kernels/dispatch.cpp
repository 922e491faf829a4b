#include "latticelab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace latticelab::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Table* find(std::string_view name) {
  for (const Table* t : available())
    if (t->name == name) return t;
  return nullptr;
}

const Table* initial_choice() {
  if (const char* env = std::getenv("LATTICELAB_KERNELS"))
    if (const Table* t = find(env)) return t;
  return available().back();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{initial_choice()};
  return table;
}

}  // namespace

std::vector<const Table*> available() {
  std::vector<const Table*> out{&scalar()};
  if (const Table* t = detail::avx2_table(); t != nullptr && cpu_has_avx2()) out.push_back(t);
  if (const Table* t = detail::neon_table(); t != nullptr) out.push_back(t);
  return out;
}

const Table& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  const Table* t = find(name);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

}  // namespace latticelab::kernels
