#include "fkppg/errors.hpp"

namespace fkppg {

const char* err_code_name(ErrCode code) {
  switch (code) {
    case ErrCode::SyntaxError: return "SyntaxError";
    case ErrCode::UndeclaredVariable: return "UndeclaredVariable";
    case ErrCode::DuplicateCheckpoint: return "DuplicateCheckpoint";
    case ErrCode::MissingNil: return "MissingNil";
    case ErrCode::UnknownDistribution: return "UnknownDistribution";
    case ErrCode::NumericDomain: return "NumericDomain";
    case ErrCode::PredicateNotBoolean: return "PredicateNotBoolean";
    case ErrCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrCode::QueryOutOfRange: return "QueryOutOfRange";
    case ErrCode::InvalidParameter: return "InvalidParameter";
    case ErrCode::UnknownCheckpoint: return "UnknownCheckpoint";
    case ErrCode::PartitionViolation: return "PartitionViolation";
    case ErrCode::NilSelfLoopConflict: return "NilSelfLoopConflict";
    case ErrCode::ScoreOnNil: return "ScoreOnNil";
    case ErrCode::ContinuousDistribution: return "ContinuousDistribution";
    case ErrCode::PathExplosion: return "PathExplosion";
    case ErrCode::ZeroTotalWeight: return "ZeroTotalWeight";
    case ErrCode::NotTerminatedYet: return "NotTerminatedYet";
    case ErrCode::ZeroWeightEnsemble: return "ZeroWeightEnsemble";
    case ErrCode::FileNotFound: return "FileNotFound";
  }
  return "UnknownError";
}

}  // namespace fkppg
