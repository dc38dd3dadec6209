#pragma once

#include "arsenti/classifier.hpp"
#include "arsenti/corpus.hpp"
#include "arsenti/errors.hpp"
#include "arsenti/eval.hpp"
#include "arsenti/expansion.hpp"
#include "arsenti/features.hpp"
#include "arsenti/lexicon.hpp"
#include "arsenti/pipeline.hpp"
#include "arsenti/polarity.hpp"
#include "arsenti/preprocess.hpp"
#include "arsenti/svmlight.hpp"
