//! Resource files compiled into the crate.

pub(crate) const TAG_DICTIONARY: &str = include_str!("../data/textproc/tag_dictionary.tsv");
pub(crate) const SUFFIX_RULES: &str = include_str!("../data/textproc/suffix_rules.tsv");
pub(crate) const STOPWORDS: &str = include_str!("../data/textproc/stopwords.txt");
pub(crate) const GAZETTEER: &str = include_str!("../data/textproc/gazetteer.tsv");

pub(crate) const IRREGULAR_PAST: &str = include_str!("../data/gec/irregular_past.tsv");
pub(crate) const SPELLING_DICTIONARY: &str = include_str!("../data/gec/spelling_dictionary.txt");
pub(crate) const INFINITIVE_VERBS: &str = include_str!("../data/gec/infinitive_verbs.txt");
pub(crate) const BARE_NOUNS: &str = include_str!("../data/gec/bare_nouns.txt");
pub(crate) const BASE_VERBS: &str = include_str!("../data/gec/base_verbs.txt");
pub(crate) const COUNT_NOUNS: &str = include_str!("../data/gec/count_nouns.txt");

pub(crate) const DEMO_LEXICON: &str = include_str!("../data/lexicon/demo.tsv");
pub(crate) const SYNONYMS: &str = include_str!("../data/nlu/synonyms.tsv");

/// Demo pictogram images, keyed by the `image_ref` used in the demo lexicon.
pub(crate) const DEMO_ASSETS: &[(&str, &[u8])] = &[
    ("pictograms/apple.svg", include_bytes!("../data/pictograms/apple.svg")),
    ("pictograms/baby.svg", include_bytes!("../data/pictograms/baby.svg")),
    ("pictograms/bad.svg", include_bytes!("../data/pictograms/bad.svg")),
    ("pictograms/ball.svg", include_bytes!("../data/pictograms/ball.svg")),
    ("pictograms/banana.svg", include_bytes!("../data/pictograms/banana.svg")),
    ("pictograms/baseball.svg", include_bytes!("../data/pictograms/baseball.svg")),
    ("pictograms/basketball.svg", include_bytes!("../data/pictograms/basketball.svg")),
    ("pictograms/bathroom.svg", include_bytes!("../data/pictograms/bathroom.svg")),
    ("pictograms/bed.svg", include_bytes!("../data/pictograms/bed.svg")),
    ("pictograms/big.svg", include_bytes!("../data/pictograms/big.svg")),
    ("pictograms/bird.svg", include_bytes!("../data/pictograms/bird.svg")),
    ("pictograms/blue.svg", include_bytes!("../data/pictograms/blue.svg")),
    ("pictograms/book.svg", include_bytes!("../data/pictograms/book.svg")),
    ("pictograms/bread.svg", include_bytes!("../data/pictograms/bread.svg")),
    ("pictograms/brother.svg", include_bytes!("../data/pictograms/brother.svg")),
    ("pictograms/brush.svg", include_bytes!("../data/pictograms/brush.svg")),
    ("pictograms/bts.svg", include_bytes!("../data/pictograms/bts.svg")),
    ("pictograms/bus.svg", include_bytes!("../data/pictograms/bus.svg")),
    ("pictograms/cake.svg", include_bytes!("../data/pictograms/cake.svg")),
    ("pictograms/can.svg", include_bytes!("../data/pictograms/can.svg")),
    ("pictograms/candy.svg", include_bytes!("../data/pictograms/candy.svg")),
    ("pictograms/car.svg", include_bytes!("../data/pictograms/car.svg")),
    ("pictograms/cat.svg", include_bytes!("../data/pictograms/cat.svg")),
    ("pictograms/chair.svg", include_bytes!("../data/pictograms/chair.svg")),
    ("pictograms/chicken.svg", include_bytes!("../data/pictograms/chicken.svg")),
    ("pictograms/chocolate.svg", include_bytes!("../data/pictograms/chocolate.svg")),
    ("pictograms/come.svg", include_bytes!("../data/pictograms/come.svg")),
    ("pictograms/computer.svg", include_bytes!("../data/pictograms/computer.svg")),
    ("pictograms/cookie.svg", include_bytes!("../data/pictograms/cookie.svg")),
    ("pictograms/cream.svg", include_bytes!("../data/pictograms/cream.svg")),
    ("pictograms/cry.svg", include_bytes!("../data/pictograms/cry.svg")),
    ("pictograms/dad.svg", include_bytes!("../data/pictograms/dad.svg")),
    ("pictograms/dance.svg", include_bytes!("../data/pictograms/dance.svg")),
    ("pictograms/doctor.svg", include_bytes!("../data/pictograms/doctor.svg")),
    ("pictograms/dog.svg", include_bytes!("../data/pictograms/dog.svg")),
    ("pictograms/draw.svg", include_bytes!("../data/pictograms/draw.svg")),
    ("pictograms/drink.svg", include_bytes!("../data/pictograms/drink.svg")),
    ("pictograms/eat.svg", include_bytes!("../data/pictograms/eat.svg")),
    ("pictograms/family.svg", include_bytes!("../data/pictograms/family.svg")),
    ("pictograms/finish.svg", include_bytes!("../data/pictograms/finish.svg")),
    ("pictograms/fish.svg", include_bytes!("../data/pictograms/fish.svg")),
    ("pictograms/flower.svg", include_bytes!("../data/pictograms/flower.svg")),
    ("pictograms/friend.svg", include_bytes!("../data/pictograms/friend.svg")),
    ("pictograms/fun.svg", include_bytes!("../data/pictograms/fun.svg")),
    ("pictograms/game.svg", include_bytes!("../data/pictograms/game.svg")),
    ("pictograms/give.svg", include_bytes!("../data/pictograms/give.svg")),
    ("pictograms/go.svg", include_bytes!("../data/pictograms/go.svg")),
    ("pictograms/good.svg", include_bytes!("../data/pictograms/good.svg")),
    ("pictograms/goodbye.svg", include_bytes!("../data/pictograms/goodbye.svg")),
    ("pictograms/grandma.svg", include_bytes!("../data/pictograms/grandma.svg")),
    ("pictograms/grandpa.svg", include_bytes!("../data/pictograms/grandpa.svg")),
    ("pictograms/green.svg", include_bytes!("../data/pictograms/green.svg")),
    ("pictograms/hand.svg", include_bytes!("../data/pictograms/hand.svg")),
    ("pictograms/happy.svg", include_bytes!("../data/pictograms/happy.svg")),
    ("pictograms/he.svg", include_bytes!("../data/pictograms/he.svg")),
    ("pictograms/hear.svg", include_bytes!("../data/pictograms/hear.svg")),
    ("pictograms/hello.svg", include_bytes!("../data/pictograms/hello.svg")),
    ("pictograms/help.svg", include_bytes!("../data/pictograms/help.svg")),
    ("pictograms/home.svg", include_bytes!("../data/pictograms/home.svg")),
    ("pictograms/horse.svg", include_bytes!("../data/pictograms/horse.svg")),
    ("pictograms/hospital.svg", include_bytes!("../data/pictograms/hospital.svg")),
    ("pictograms/house.svg", include_bytes!("../data/pictograms/house.svg")),
    ("pictograms/hug.svg", include_bytes!("../data/pictograms/hug.svg")),
    ("pictograms/hungry.svg", include_bytes!("../data/pictograms/hungry.svg")),
    ("pictograms/hurt.svg", include_bytes!("../data/pictograms/hurt.svg")),
    ("pictograms/i.svg", include_bytes!("../data/pictograms/i.svg")),
    ("pictograms/ice.svg", include_bytes!("../data/pictograms/ice.svg")),
    ("pictograms/ice_cream.svg", include_bytes!("../data/pictograms/ice_cream.svg")),
    ("pictograms/juice.svg", include_bytes!("../data/pictograms/juice.svg")),
    ("pictograms/jump.svg", include_bytes!("../data/pictograms/jump.svg")),
    ("pictograms/korea.svg", include_bytes!("../data/pictograms/korea.svg")),
    ("pictograms/laugh.svg", include_bytes!("../data/pictograms/laugh.svg")),
    ("pictograms/like.svg", include_bytes!("../data/pictograms/like.svg")),
    ("pictograms/look.svg", include_bytes!("../data/pictograms/look.svg")),
    ("pictograms/love.svg", include_bytes!("../data/pictograms/love.svg")),
    ("pictograms/milk.svg", include_bytes!("../data/pictograms/milk.svg")),
    ("pictograms/mom.svg", include_bytes!("../data/pictograms/mom.svg")),
    ("pictograms/more.svg", include_bytes!("../data/pictograms/more.svg")),
    ("pictograms/music.svg", include_bytes!("../data/pictograms/music.svg")),
    ("pictograms/my.svg", include_bytes!("../data/pictograms/my.svg")),
    ("pictograms/new_york.svg", include_bytes!("../data/pictograms/new_york.svg")),
    ("pictograms/no.svg", include_bytes!("../data/pictograms/no.svg")),
    ("pictograms/orange.svg", include_bytes!("../data/pictograms/orange.svg")),
    ("pictograms/park.svg", include_bytes!("../data/pictograms/park.svg")),
    ("pictograms/phone.svg", include_bytes!("../data/pictograms/phone.svg")),
    ("pictograms/pizza.svg", include_bytes!("../data/pictograms/pizza.svg")),
    ("pictograms/play.svg", include_bytes!("../data/pictograms/play.svg")),
    ("pictograms/play_baseball.svg", include_bytes!("../data/pictograms/play_baseball.svg")),
    ("pictograms/play_soccer.svg", include_bytes!("../data/pictograms/play_soccer.svg")),
    ("pictograms/please.svg", include_bytes!("../data/pictograms/please.svg")),
    ("pictograms/rabbit.svg", include_bytes!("../data/pictograms/rabbit.svg")),
    ("pictograms/rain.svg", include_bytes!("../data/pictograms/rain.svg")),
    ("pictograms/read.svg", include_bytes!("../data/pictograms/read.svg")),
    ("pictograms/red.svg", include_bytes!("../data/pictograms/red.svg")),
    ("pictograms/rice.svg", include_bytes!("../data/pictograms/rice.svg")),
    ("pictograms/run.svg", include_bytes!("../data/pictograms/run.svg")),
    ("pictograms/sad.svg", include_bytes!("../data/pictograms/sad.svg")),
    ("pictograms/school.svg", include_bytes!("../data/pictograms/school.svg")),
    ("pictograms/see.svg", include_bytes!("../data/pictograms/see.svg")),
    ("pictograms/she.svg", include_bytes!("../data/pictograms/she.svg")),
    ("pictograms/sing.svg", include_bytes!("../data/pictograms/sing.svg")),
    ("pictograms/sister.svg", include_bytes!("../data/pictograms/sister.svg")),
    ("pictograms/sit.svg", include_bytes!("../data/pictograms/sit.svg")),
    ("pictograms/sleep.svg", include_bytes!("../data/pictograms/sleep.svg")),
    ("pictograms/small.svg", include_bytes!("../data/pictograms/small.svg")),
    ("pictograms/soccer.svg", include_bytes!("../data/pictograms/soccer.svg")),
    ("pictograms/sorry.svg", include_bytes!("../data/pictograms/sorry.svg")),
    ("pictograms/stand.svg", include_bytes!("../data/pictograms/stand.svg")),
    ("pictograms/stop.svg", include_bytes!("../data/pictograms/stop.svg")),
    ("pictograms/sun.svg", include_bytes!("../data/pictograms/sun.svg")),
    ("pictograms/swim.svg", include_bytes!("../data/pictograms/swim.svg")),
    ("pictograms/table.svg", include_bytes!("../data/pictograms/table.svg")),
    ("pictograms/take.svg", include_bytes!("../data/pictograms/take.svg")),
    ("pictograms/teacher.svg", include_bytes!("../data/pictograms/teacher.svg")),
    ("pictograms/teeth.svg", include_bytes!("../data/pictograms/teeth.svg")),
    ("pictograms/tennis.svg", include_bytes!("../data/pictograms/tennis.svg")),
    ("pictograms/thank_you.svg", include_bytes!("../data/pictograms/thank_you.svg")),
    ("pictograms/they.svg", include_bytes!("../data/pictograms/they.svg")),
    ("pictograms/thirsty.svg", include_bytes!("../data/pictograms/thirsty.svg")),
    ("pictograms/tired.svg", include_bytes!("../data/pictograms/tired.svg")),
    ("pictograms/toy.svg", include_bytes!("../data/pictograms/toy.svg")),
    ("pictograms/tree.svg", include_bytes!("../data/pictograms/tree.svg")),
    ("pictograms/tv.svg", include_bytes!("../data/pictograms/tv.svg")),
    ("pictograms/walk.svg", include_bytes!("../data/pictograms/walk.svg")),
    ("pictograms/want.svg", include_bytes!("../data/pictograms/want.svg")),
    ("pictograms/wash.svg", include_bytes!("../data/pictograms/wash.svg")),
    ("pictograms/water.svg", include_bytes!("../data/pictograms/water.svg")),
    ("pictograms/we.svg", include_bytes!("../data/pictograms/we.svg")),
    ("pictograms/write.svg", include_bytes!("../data/pictograms/write.svg")),
    ("pictograms/yes.svg", include_bytes!("../data/pictograms/yes.svg")),
    ("pictograms/you.svg", include_bytes!("../data/pictograms/you.svg")),
    ("pictograms/your.svg", include_bytes!("../data/pictograms/your.svg")),
];
