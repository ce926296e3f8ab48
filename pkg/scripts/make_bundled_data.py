#!/usr/bin/env python3
"""Regenerates the bundled demo corpus and MCQ suite.

Outputs are deterministic and committed; run this only when the content
tables below change:

    python scripts/make_bundled_data.py

Shape: 50 corpus documents (3 topics x 5 subjects x 3 levels, plus 5
general entries) and 60 suite items (4 per level/subject pair, gold answer
letters rotating A-D so a constant-letter baseline scores exactly 25.0 on
every subject).
"""

from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "eduroute" / "data"

LEVELS = ("primary", "middle", "high")
SUBJECTS = ("Chinese", "Mathematics", "English", "Science", "Ethics")
SHORT = {"primary": "pri", "middle": "mid", "high": "high"}
SUBJ_SHORT = {
    "Chinese": "chi", "Mathematics": "math", "English": "eng",
    "Science": "sci", "Ethics": "eth",
}

# (level, subject) -> three (title, fact) topics. The fact doubles as the
# correct choice text of the questions written against the topic.
TOPICS: dict[tuple[str, str], list[tuple[str, str]]] = {
    ("primary", "Chinese"): [
        ("拼音声调", "普通话有四个声调，标调时标在韵母的主要元音上"),
        ("比喻句", "比喻句用一个事物来描写另一个事物，常含有“像”“好像”这样的词"),
        ("《静夜思》", "《静夜思》是李白的诗，写的是游子望月思念故乡"),
    ],
    ("primary", "Mathematics"): [
        ("乘法口诀", "乘法口诀表帮助我们快速计算两个一位数相乘的结果"),
        ("长方形周长", "长方形的周长等于长与宽之和的两倍"),
        ("分数的意义", "把一个整体平均分成若干份，表示其中一份或几份的数叫做分数"),
    ],
    ("primary", "English"): [
        ("Alphabet song", "The English alphabet has 26 letters, from A to Z"),
        ("Plural nouns", "Most English nouns form the plural by adding the letter s"),
        ("Greeting words", "Hello and good morning are common English greetings"),
    ],
    ("primary", "Science"): [
        ("植物的生长", "绿色植物通过光合作用利用阳光把水和二氧化碳变成养分"),
        ("水的三态", "水有固态、液态和气态三种状态，会随温度变化而转化"),
        ("磁铁的性质", "磁铁有南北两极，同名磁极相斥，异名磁极相吸"),
    ],
    ("primary", "Ethics"): [
        ("交通安全", "过马路要走人行横道，红灯停绿灯行"),
        ("诚实守信", "诚实守信就是说话做事真实可靠，答应别人的事要做到"),
        ("爱护公物", "公共设施属于大家，应当爱护公物不乱涂乱画"),
    ],
    ("middle", "Chinese"): [
        ("文言文虚词", "文言文中“之”“而”“其”等虚词的用法要结合具体语境判断"),
        ("《背影》", "《背影》是朱自清的散文，通过父亲买橘子的背影表达父爱"),
        ("议论文三要素", "议论文的三要素是论点、论据和论证"),
    ],
    ("middle", "Mathematics"): [
        ("勾股定理", "勾股定理指直角三角形两条直角边的平方和等于斜边的平方"),
        ("一元二次方程", "一元二次方程可以用求根公式、配方法或因式分解法求解"),
        ("函数图象", "一次函数的图象是一条直线，由斜率和截距确定"),
    ],
    ("middle", "English"): [
        ("Past tense", "Regular English verbs form the past tense by adding ed"),
        ("Reading comprehension", "Skimming means reading quickly to get the main idea of a passage"),
        ("Subject-verb agreement", "A singular subject takes a singular verb in English sentences"),
    ],
    ("middle", "Science"): [
        ("光的折射", "光从一种介质斜射入另一种介质时传播方向发生偏折，这是折射"),
        ("化学反应", "化学反应前后原子的种类和数目不变，这是质量守恒定律的基础"),
        ("细胞结构", "动物细胞有细胞膜、细胞质和细胞核，植物细胞还有细胞壁和叶绿体"),
    ],
    ("middle", "Ethics"): [
        ("未成年人保护", "未成年人保护法为未成年人的健康成长提供法律保障"),
        ("网络文明", "上网要遵守法律和公德，不造谣不传谣，保护个人信息"),
        ("集体荣誉", "集体荣誉靠每个成员共同维护，个人应当为集体着想"),
    ],
    ("high", "Chinese"): [
        ("《红楼梦》", "《红楼梦》是曹雪芹创作的长篇小说，被誉为中国古典小说的高峰"),
        ("修辞手法", "排比是把三个或三个以上结构相似的句子排列起来增强语势的修辞"),
        ("古代诗歌鉴赏", "鉴赏古代诗歌要从意象、意境、语言和表达技巧入手"),
    ],
    ("high", "Mathematics"): [
        ("导数的意义", "函数在某点的导数表示曲线在该点切线的斜率"),
        ("等比数列", "等比数列相邻两项之比为常数，这个常数叫做公比"),
        ("概率与统计", "古典概型中事件的概率等于有利结果数除以所有等可能结果数"),
    ],
    ("high", "English"): [
        ("Attributive clause", "An attributive clause modifies a noun and is often introduced by that or which"),
        ("Essay writing", "A good English essay states a clear thesis and supports it with evidence"),
        ("Subjunctive mood", "The subjunctive mood expresses wishes or conditions contrary to fact"),
    ],
    ("high", "Science"): [
        ("万有引力", "任何两个物体之间都存在引力，引力与质量乘积成正比与距离平方成反比"),
        ("氧化还原反应", "氧化还原反应的本质是电子的转移，化合价发生升降"),
        ("遗传与基因", "基因是具有遗传效应的DNA片段，控制生物的性状"),
    ],
    ("high", "Ethics"): [
        ("社会主义核心价值观", "社会主义核心价值观在个人层面提倡爱国、敬业、诚信、友善"),
        ("公民的权利与义务", "公民既依法享有广泛的权利，也必须履行相应的义务"),
        ("劳动的价值", "劳动创造价值，尊重劳动者是全社会应有的风尚"),
    ],
}

GENERAL_DOCS = [
    ("doc-gen-1", "学习方法", "高效学习需要制定计划、及时复习并在错题中总结规律。"),
    ("doc-gen-2", "图书馆使用指南", "图书馆的藏书按分类号排架，借书需要凭借书证办理。"),
    ("doc-gen-3", "百科全书", "百科全书按条目收录各领域知识，便于系统查阅。"),
    ("doc-gen-4", "考试注意事项", "考试前要检查文具，答题时先易后难，留出时间检查。"),
    ("doc-gen-5", "体育锻炼", "适量的体育锻炼能增强体质，改善睡眠和注意力。"),
]

QUESTION_STEMS = [
    "关于{title}，下列说法正确的是？",
    "下面对{title}的描述，哪一项是正确的？",
]


def make_corpus() -> list[dict]:
    docs = []
    for level in LEVELS:
        for subject in SUBJECTS:
            for i, (title, fact) in enumerate(TOPICS[(level, subject)], start=1):
                doc_id = f"doc-{SHORT[level]}-{SUBJ_SHORT[subject]}-{i}"
                text = f"{title}：{fact}。这是{subject}（{level}）学习中的一个基础知识点。"
                docs.append({"id": doc_id, "title": title, "text": text})
    for doc_id, title, text in GENERAL_DOCS:
        docs.append({"id": doc_id, "title": title, "text": text})
    return docs


def make_suite() -> list[dict]:
    items = []
    for level in LEVELS:
        for subject in SUBJECTS:
            topics = TOPICS[(level, subject)]
            # 4 items over 3 topics: the first topic is asked twice
            topic_order = [0, 1, 2, 0]
            for i, topic_idx in enumerate(topic_order):
                title, fact = topics[topic_idx]
                gold_doc = f"doc-{SHORT[level]}-{SUBJ_SHORT[subject]}-{topic_idx + 1}"
                gold_letter = "ABCD"[i]
                distractors = [f for _, f in topics if f != fact][:2]
                distractors.append("以上说法都不正确")
                choices = [""] * 4
                choices["ABCD".index(gold_letter)] = fact
                fill = iter(distractors)
                for slot in range(4):
                    if not choices[slot]:
                        choices[slot] = next(fill)
                stem = QUESTION_STEMS[i % len(QUESTION_STEMS)].format(title=title)
                items.append(
                    {
                        "id": f"q-{SHORT[level]}-{SUBJ_SHORT[subject]}-{i + 1}",
                        "level": level,
                        "subject": subject,
                        "question": stem,
                        "choices": choices,
                        "answer": gold_letter,
                        "gold_doc": gold_doc,
                    }
                )
    return items


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    corpus = make_corpus()
    suite = make_suite()
    with open(OUT / "corpus_50.jsonl", "w", encoding="utf-8") as fh:
        for doc in corpus:
            fh.write(json.dumps(doc, ensure_ascii=False) + "\n")
    with open(OUT / "suite_60.jsonl", "w", encoding="utf-8") as fh:
        for item in suite:
            fh.write(json.dumps(item, ensure_ascii=False) + "\n")
    print(f"wrote {len(corpus)} docs and {len(suite)} items to {OUT}")


if __name__ == "__main__":
    main()
