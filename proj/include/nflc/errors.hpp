#pragma once

#include <stdexcept>
#include <string>

namespace nflc {

// Failure buckets. The CLI maps them to exit codes: domain -> 1, usage -> 2,
// internal -> 3.
enum class ErrorKind { domain, usage, internal };

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

#define NFLC_ERROR(Name, Kind)                                                            \
    class Name : public Error {                                                           \
       public:                                                                            \
        explicit Name(std::string msg) : Error(ErrorKind::Kind, std::move(msg)) {}        \
    }

NFLC_ERROR(InvalidArgument, usage);         // violated precondition on a public surface
NFLC_ERROR(FieldMismatch, usage);           // elements of different number fields combined
NFLC_ERROR(ZeroDiscriminant, domain);       // minimal polynomial not squarefree
NFLC_ERROR(NotIrreducible, domain);         // rational root found or no certificate
NFLC_ERROR(InvalidPrime, domain);           // not prime / duplicate / out of admissible range
NFLC_ERROR(SearchLimitExceeded, domain);    // prime search hit the ceiling
NFLC_ERROR(DegreeMismatch, usage);          // field degree != locality + 1
NFLC_ERROR(NotSplit, domain);               // prime not totally split (or divides disc)
NFLC_ERROR(NotGoodCode, domain);            // spec fails the injectivity bound
NFLC_ERROR(Unsatisfiable, internal);        // cover requested for a non-good spec
NFLC_ERROR(MTooSmall, domain);              // designed radix below 2
NFLC_ERROR(CapacityExceeded, domain);       // payload does not fit one codeword
NFLC_ERROR(BadPadding, domain);             // message is not a padded byte payload
NFLC_ERROR(InsufficientLocalData, domain);  // fewer than `locality` helpers in the group
NFLC_ERROR(InsufficientGlobalData, domain); // solvable groups' modulus product too small
NFLC_ERROR(Inconsistent, domain);           // residues contradict each other (corruption)
NFLC_ERROR(OutOfRange, domain);             // CRT representative outside the message box
NFLC_ERROR(TooLarge, domain);               // exhaustive scan refused without force
NFLC_ERROR(MalformedCodeword, domain);      // wire bytes violate the format
NFLC_ERROR(DerivedMismatch, domain);        // serialized derived block disagrees with recomputation
NFLC_ERROR(InvalidScenario, usage);         // simulator scenario violates its invariants

#undef NFLC_ERROR

}  // namespace nflc
