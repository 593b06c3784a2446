#ifndef KANON_DEADLINE_HPP
#define KANON_DEADLINE_HPP

#include <chrono>
#include <optional>

namespace kanon {

/// Cooperative time limit; long loops poll expired() between work items so
/// aborts land on clean structure boundaries.
class Deadline {
public:
    Deadline() = default; // unlimited

    static Deadline after(double seconds) {
        Deadline d;
        d.end_ = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(seconds));
        return d;
    }

    bool expired() const { return end_ && std::chrono::steady_clock::now() >= *end_; }

private:
    std::optional<std::chrono::steady_clock::time_point> end_;
};

} // namespace kanon

#endif
