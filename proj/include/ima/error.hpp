// Exception types shared by every module of the library.

#ifndef IMA_ERROR_HPP_
#define IMA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ima {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

#define IMA_DEFINE_ERROR(Name)         \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  };

  IMA_DEFINE_ERROR(NotComposable)
  IMA_DEFINE_ERROR(RankMismatch)
  IMA_DEFINE_ERROR(SplitMismatch)
  IMA_DEFINE_ERROR(UnknownSymbol)
  IMA_DEFINE_ERROR(RankError)
  IMA_DEFINE_ERROR(MissingSymbol)
  IMA_DEFINE_ERROR(InvalidArity)
  IMA_DEFINE_ERROR(IllFormedConfig)
  IMA_DEFINE_ERROR(InvalidSpec)
  IMA_DEFINE_ERROR(BadLabel)
  IMA_DEFINE_ERROR(NotInternalEdge)
  IMA_DEFINE_ERROR(FormatError)

#undef IMA_DEFINE_ERROR

  // Parse failure with a 1-based source location.
  class SyntaxError : public Error {
   public:
    SyntaxError(std::string const& msg, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": "
                + msg),
          _line(line),
          _column(column) {}

    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::size_t _line;
    std::size_t _column;
  };

}  // namespace ima

#endif  // IMA_ERROR_HPP_
