"""Prosody toolkit for Vietnamese poems.

The toolkit scores how well a poem follows the rules of its genre
(line lengths, tone pattern and rhymes), detects the genre of a poem,
filters poem corpora, builds prompt datasets and evaluates text generators.

.. graphviz::

   digraph foo {

      syllable [label="syllable"]
      genres [label="genres"]
      scoring [label="scoring"]
      classifier [label="classifier"]
      corpus [label="corpus"]
      promptforge [label="promptforge"]
      harness [label="harness"]

      syllable -> genres
      genres -> scoring
      scoring -> classifier
      classifier -> corpus
      scoring -> promptforge
      corpus -> harness
      promptforge -> harness
   }

|
"""
