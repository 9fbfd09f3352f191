#ifndef SKG_ERRORS_HPP
#define SKG_ERRORS_HPP

#include <stdexcept>

namespace skg {

// File system failures (open, read, write). The CLI maps these to exit 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace skg

#endif
