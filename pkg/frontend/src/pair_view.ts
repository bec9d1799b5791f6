// Pair task form: one required same/different choice per record pair, with
// the submit button gated until every pair is answered.

import {
  attributeColumns,
  attributeValue,
  canSubmit,
  encodePairAnswers,
  remainingPairs,
  submitCaption,
  type PairChoices,
} from "./gating.js";
import type { AssignmentAnswers, PairHitPayload } from "./types.js";

export interface PairViewHandle {
  choices: PairChoices;
  submitButton: HTMLButtonElement;
  setChoice(index: number, same: boolean): void;
}

export function renderPairHit(
  container: HTMLElement,
  payload: PairHitPayload,
  onSubmit: (answers: AssignmentAnswers, reason: string) => void,
): PairViewHandle {
  if (!payload.pairs.length) {
    throw new Error(`pair task ${payload.id} has no pairs`);
  }
  container.innerHTML = "";
  const choices: PairChoices = payload.pairs.map(() => null);

  const heading = document.createElement("h2");
  heading.textContent = "Decide whether two products are the same";
  container.appendChild(heading);

  const submitButton = document.createElement("button");
  submitButton.className = "submit";

  const refresh = () => {
    const left = remainingPairs(choices);
    submitButton.textContent = submitCaption(left);
    submitButton.disabled = !canSubmit(left);
  };

  payload.pairs.forEach((pair, index) => {
    const section = document.createElement("section");
    section.className = "pair-card";

    const title = document.createElement("h3");
    title.textContent = `Product pair #${index + 1}`;
    section.appendChild(title);

    const table = document.createElement("table");
    const columns = attributeColumns([pair.a, pair.b]);
    const head = table.insertRow();
    for (const column of columns) {
      const th = document.createElement("th");
      th.textContent = column;
      head.appendChild(th);
    }
    for (const record of [pair.a, pair.b]) {
      const row = table.insertRow();
      for (const column of columns) {
        row.insertCell().textContent = attributeValue(record, column);
      }
    }
    section.appendChild(table);

    const fieldset = document.createElement("fieldset");
    const legend = document.createElement("legend");
    legend.textContent = "Your choice (required)";
    fieldset.appendChild(legend);
    for (const [value, text] of [
      ["same", "They are the same product"],
      ["different", "They are different products"],
    ] as const) {
      const label = document.createElement("label");
      const radio = document.createElement("input");
      radio.type = "radio";
      radio.name = `pair-${index}`;
      radio.value = value;
      radio.addEventListener("change", () => {
        choices[index] = value === "same";
        refresh();
      });
      label.appendChild(radio);
      label.appendChild(document.createTextNode(" " + text));
      fieldset.appendChild(label);
    }
    section.appendChild(fieldset);
    container.appendChild(section);
  });

  const reasonBox = document.createElement("textarea");
  reasonBox.className = "reason";
  reasonBox.placeholder = "Reasons for your answers (optional)";
  container.appendChild(reasonBox);

  submitButton.addEventListener("click", () => {
    if (!canSubmit(remainingPairs(choices))) return;
    onSubmit({ pairs: encodePairAnswers(payload.pairs, choices) }, reasonBox.value);
  });
  container.appendChild(submitButton);
  refresh();

  return {
    choices,
    submitButton,
    setChoice(index: number, same: boolean) {
      const radio = container.querySelector<HTMLInputElement>(
        `input[name="pair-${index}"][value="${same ? "same" : "different"}"]`,
      );
      if (!radio) throw new Error(`no radio for pair ${index}`);
      radio.checked = true;
      radio.dispatchEvent(new Event("change"));
    },
  };
}
